#pragma once

#include "g2t/generator.hpp"
#include "g2t/prec_real.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace g2t {

// gcd of the indices n >= 1 with a_n != 0 among the first `probe` coefficients.
long gcd_period(const Generator& A, std::size_t probe = 100);

struct TauSearch {
    std::optional<PrecReal> tau;
    bool boundary_root = false;      // h vanishes at the radius itself
    std::optional<PrecReal> h_at_R;  // when the generator can be evaluated there
};

// Root of h(z) = A(z) - z A'(z) on (0, R) by bisection to width `tol`.
// R = nullopt means A is entire.
TauSearch find_tau(const Generator& A, const std::optional<PrecReal>& R, const mpq_class& tol, Precision p);

enum class Branch { strict, sharp };

struct CriterionReport {
    Branch branch = Branch::sharp;
    std::optional<PrecReal> tau;
    PrecReal r;
    std::optional<PrecReal> C;
    std::optional<PrecReal> R;        // nullopt: infinite
    std::optional<PrecReal> y_at_r;   // sharp branch: partial sum of y at r plus declared tail
    bool y_tail_declared = false;
    bool boundary_root = false;
    long gcd_period = 1;
    std::optional<double> alpha_fit;  // diagnostic only
};

CriterionReport analyze(const Generator& A, int digits = 60);

// Least-squares slope of log(y_n r^n) against -log n over the upper half of the data.
double empirical_exponent(const std::vector<mpq_class>& y, const PrecReal& r_inv);
// Same, with values already scaled: y_n r^n at index n.
double empirical_exponent_scaled(const std::vector<double>& scaled);

const char* to_string(Branch b);

}  // namespace g2t
