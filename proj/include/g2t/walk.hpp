#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace g2t {

struct Monomial {
    int x;
    int y;
    int coeff;
};

// W(x, y) fully expanded, prefactor x^-2 y^-3 included.
const std::array<Monomial, 12>& weight_monomials();
// M(x, y) = 1 + x + y + xy + x^2 y + x y^2 + x^2 y^2.
const std::array<Monomial, 7>& step_monomials();

// Dense bivariate Laurent polynomial with exact integer coefficients.
struct LaurentGrid {
    int lo_x = 0;
    int lo_y = 0;
    int nx = 0;
    int ny = 0;
    std::vector<mpz_class> data;

    LaurentGrid() = default;
    LaurentGrid(int lo_x, int lo_y, int nx, int ny);
    // coefficient of x^i y^j (zero outside the stored window)
    mpz_class coeff(int i, int j) const;
    mpz_class& at(int i, int j) { return data[static_cast<std::size_t>((i - lo_x) * ny + (j - lo_y))]; }
};

LaurentGrid weight_grid();
// g * M, untruncated.
LaurentGrid times_step(const LaurentGrid& g);

class ExactLimitError : public std::range_error {
public:
    using std::range_error::range_error;
};

class RefinementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WalkOptions {
    std::size_t exact_limit = 500;
    int threads = 1;
};

// [x^n y^n] W M^n by exact iterated multiplication on a pruned grid.
mpz_class bn_exact(std::size_t n, const WalkOptions& opt = {});
// b_0 .. b_N from one pass.
std::vector<mpz_class> bn_exact_sequence(std::size_t N, const WalkOptions& opt = {});

// Walks of the same step set confined to the open Weyl chamber, with the
// reflection boundary; values equal b_k. Exact and 7^-k scaled variants.
std::vector<mpz_class> chamber_sequence_exact(std::size_t N, int threads = 1);
std::vector<double> chamber_sequence_scaled(std::size_t N, int threads = 1);

// b_n / 7^n in double precision.
double bn_scaled(std::size_t n, int threads = 1);
std::vector<double> bn_scaled_sequence(std::size_t N, int threads = 1);

struct SaddleResult {
    double value = 0;
    double imag = 0;
    std::size_t grid = 0;
};

// Periodic trapezoid on the torus for b_n / 7^n, doubling the grid until
// successive values agree to 1e-8 relative.
SaddleResult saddle_quadrature(std::size_t n, std::size_t grid_points = 64,
                               std::size_t max_grid = 8192);

}  // namespace g2t
