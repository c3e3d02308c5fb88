#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2t/exact_series.hpp"
#include "g2t/sing.hpp"
#include "g2t/walk.hpp"

#include <cmath>
#include <map>
#include <utility>

using namespace g2t;

namespace {

using Sparse = std::map<std::pair<int, int>, mpz_class>;

mpz_class pow7(std::size_t n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 7, n);
    return p;
}

// Oracle: W M^n by sparse multiplication with no window pruning.
Sparse sparse_walk(int n) {
    Sparse w;
    for (const auto& m : weight_monomials()) w[{m.x, m.y}] += m.coeff;
    for (int k = 0; k < n; ++k) {
        Sparse next;
        for (const auto& [e, c] : w)
            for (const auto& s : step_monomials()) next[{e.first + s.x, e.second + s.y}] += c * s.coeff;
        w = std::move(next);
    }
    return w;
}

mpz_class sparse_bn(int n) {
    const Sparse w = sparse_walk(n);
    const auto it = w.find({n, n});
    return it == w.end() ? mpz_class(0) : it->second;
}

}  // namespace

TEST_CASE("expanded weight polynomial") {
    const int expected[12][3] = {{0, 0, 1},   {-1, 0, -1}, {-3, -1, 1}, {-4, -2, -1}, {-5, -4, 1}, {-5, -5, -1},
                                 {-4, -6, 1}, {-3, -6, -1}, {-1, -5, 1}, {0, -4, -1}, {1, -2, 1},   {1, -1, -1}};
    const auto& w = weight_monomials();
    for (int i = 0; i < 12; ++i) {
        CHECK(w[i].x == expected[i][0]);
        CHECK(w[i].y == expected[i][1]);
        CHECK(w[i].coeff == expected[i][2]);
    }
    CHECK(bn_exact(2) == 1);
    CHECK(bn_exact(4) == 4);
}

TEST_CASE("step polynomial") {
    int total = 0;
    for (const auto& s : step_monomials()) total += s.coeff;
    CHECK(total == 7);
    CHECK(step_monomials().size() == 7);
}

TEST_CASE("bn_exact small values") {
    const long expected[] = {1, 0, 1, 1, 4, 10, 35, 120, 455, 1792};
    for (int n = 0; n < 10; ++n) CHECK(bn_exact(n) == expected[n]);
    CHECK(bn_exact(1) == 0);
}

TEST_CASE("bn_exact matches unpruned sparse multiplication") {
    for (int n = 0; n <= 14; ++n) CHECK(bn_exact(n) == sparse_bn(n));
}

TEST_CASE("b_12 through the tree equation") {
    const auto b = bn_exact_sequence(12);
    const ExactSeries B = ExactSeries::from_integers(b);
    const ExactSeries A = recover_generator(B, 13);
    const ExactSeries y = lagrange_invert(A, 14);
    CHECK(bn_exact(12) == 140833);
    CHECK(y[13] == bn_exact(12));
}

TEST_CASE("exact limit") {
    WalkOptions opt;
    opt.exact_limit = 20;
    CHECK_THROWS_AS(bn_exact(21, opt), ExactLimitError);
    CHECK_NOTHROW(bn_exact(20, opt));
}

TEST_CASE("sequence, chamber DP and thread count agree") {
    const auto seq = bn_exact_sequence(120);
    WalkOptions two;
    two.threads = 2;
    CHECK(bn_exact_sequence(120, two) == seq);
    CHECK(chamber_sequence_exact(120) == seq);
    CHECK(chamber_sequence_exact(120, 3) == seq);
    for (std::size_t n : {0, 1, 7, 33, 120}) CHECK(bn_exact(n) == seq[n]);
    bool nonneg = true;
    for (const auto& v : seq) nonneg = nonneg && v >= 0;
    CHECK(nonneg);
}

TEST_CASE("bn_scaled") {
    CHECK(bn_scaled(0) == 1.0);
    CHECK(bn_scaled(9) == doctest::Approx(1792.0 / std::pow(7.0, 9)).epsilon(1e-14));
    CHECK(bn_scaled(9) == doctest::Approx(4.4407e-5).epsilon(1e-4));
    const double ref = mpq_class(bn_exact(100), pow7(100)).get_d();
    CHECK(std::fabs(bn_scaled(100) / ref - 1) < 1e-10);
    // relative error bound n 2^-45 along the exact range
    const auto ex = bn_exact_sequence(300);
    const auto sc = bn_scaled_sequence(300);
    double worst = 0;
    for (std::size_t n = 1; n <= 300; ++n) {
        if (ex[n] == 0) continue;
        const double rel = std::fabs(sc[n] / mpq_class(ex[n], pow7(n)).get_d() - 1);
        worst = std::max(worst, rel / (static_cast<double>(n) * std::ldexp(1.0, -45)));
    }
    CHECK(worst <= 1.0);
    CHECK(bn_scaled_sequence(200, 1) == bn_scaled_sequence(200, 3));
}

TEST_CASE("saddle quadrature examples") {
    CHECK(std::fabs(saddle_quadrature(4).value / (4.0 / 2401.0) - 1) < 1e-6);
    CHECK(std::fabs(saddle_quadrature(2).value / (1.0 / 49.0) - 1) < 1e-6);
    const SaddleResult s = saddle_quadrature(40);
    CHECK(std::fabs(s.value / bn_scaled(40) - 1) < 1e-6);
    CHECK(std::fabs(s.imag) < 1e-10 * std::fabs(s.value));
    CHECK_THROWS_AS(saddle_quadrature(400, 64, 64), RefinementError);
}

TEST_CASE("local CLT deviation shrinks from 500 to 2000") {
    const auto sc = bn_scaled_sequence(2000);
    const double K = 2627.5639613561857;
    double prev = INFINITY;
    for (std::size_t n : {500, 1000, 1500, 2000}) {
        const double dev = std::fabs(sc[n] * std::pow(static_cast<double>(n), 7) / K - 1);
        CHECK(dev < prev);
        prev = dev;
    }
}
