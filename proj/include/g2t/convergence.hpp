#pragma once

#include "g2t/walk.hpp"

#include <cstddef>
#include <vector>

namespace g2t {

struct ConvergenceRow {
    std::size_t n = 0;
    double value = 0;       // b_n / 7^n or a_n / rho^n
    double asymptotic = 0;  // the asymptotic formula with the same scaling
    double rel_error = 0;   // |value / asymptotic - 1|
    bool exact = true;      // false when value comes from the double-precision DP
};

// 10, 20, 50, 100, 200, 500, ... up to n_max, with n_max appended.
std::vector<std::size_t> geometric_grid(std::size_t n_max);

// b_n against the kappa series truncated at `order`; exact below opt.exact_limit, scaled DP above.
std::vector<ConvergenceRow> converge_b(std::size_t n_max, std::size_t order, const WalkOptions& opt = {},
                                       int digits = 60);
// a_n from series inversion against M rho^n / n^7; n_max must not exceed opt.exact_limit.
std::vector<ConvergenceRow> converge_a(std::size_t n_max, const WalkOptions& opt = {}, int digits = 60);

// a_0 .. a_N exactly.
std::vector<mpz_class> an_exact_sequence(std::size_t N, const WalkOptions& opt = {});

}  // namespace g2t
