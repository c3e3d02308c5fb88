#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2t/exact_series.hpp"
#include "g2t/walk.hpp"

#include <map>
#include <random>
#include <sstream>

using namespace g2t;

namespace {

// Oracle: plain O(n^2) product with no truncation tricks.
std::vector<mpq_class> naive_mul(const std::vector<mpq_class>& f, const std::vector<mpq_class>& g, std::size_t len) {
    std::vector<mpq_class> r(len, 0);
    for (std::size_t i = 0; i < f.size() && i < len; ++i)
        for (std::size_t j = 0; j < g.size() && i + j < len; ++j) r[i + j] += f[i] * g[j];
    return r;
}

// Oracle: expand f(g) term by term from explicit powers of g.
std::vector<mpq_class> naive_compose(const std::vector<mpq_class>& f, const std::vector<mpq_class>& g, std::size_t len) {
    std::vector<mpq_class> out(len, 0), pw(len, 0);
    pw[0] = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        for (std::size_t i = 0; i < len; ++i) out[i] += f[k] * pw[i];
        pw = naive_mul(pw, g, len);
    }
    return out;
}

// Oracle: [x^n] (1-x)^k log(1-x) by multiplying the two series out.
mpq_class brute_log_coeff(long k, long n) {
    std::vector<mpq_class> lg(n + 1, 0), p(n + 1, 0);
    for (long i = 1; i <= n; ++i) lg[i] = mpq_class(-1, i);
    p[0] = 1;
    for (long j = 0; j < k; ++j) {
        std::vector<mpq_class> q(n + 1, 0);
        for (long i = 0; i <= n; ++i) {
            q[i] += p[i];
            if (i + 1 <= n) q[i + 1] -= p[i];
        }
        p = q;
    }
    return naive_mul(p, lg, n + 1)[n];
}

const std::vector<long> kInvariants = {1, 0, 1, 1, 4, 10, 35, 120, 455, 1792};
const std::vector<long> kTriangulations = {1, 0, 1, 1, 2, 5, 15, 50, 181, 697};

ExactSeries longs(const std::vector<long>& v) {
    std::vector<mpq_class> c(v.begin(), v.end());
    return ExactSeries(c);
}

}  // namespace

TEST_CASE("mul examples") {
    const ExactSeries one_plus_x({1, 1}, 3);
    CHECK(mul(one_plus_x, one_plus_x) == ExactSeries({1, 2, 1}, 3));

    const ExactSeries f({3, -1, 4, 1, 5}, 5);
    CHECK(mul(f, ExactSeries({1}, 5)) == f);

    const ExactSeries geo = ExactSeries::geometric(20);
    CHECK(mul(geo, ExactSeries({1, -1}, 20)) == ExactSeries({1}, 20));
}

TEST_CASE("mul truncates to the shorter order and matches the naive product") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<mpq_class> a(5 + trial % 7), b(3 + trial % 11);
        for (auto& x : a) {
            x = mpq_class(d(rng), 1 + (d(rng) + 9) % 4);
            x.canonicalize();
        }
        for (auto& x : b) x = d(rng);
        const ExactSeries p = mul(ExactSeries(a), ExactSeries(b));
        const std::size_t len = std::min(a.size(), b.size());
        CHECK(p.order() == len);
        CHECK(p.coeffs() == naive_mul(a, b, len));
    }
}

TEST_CASE("compose examples") {
    CHECK(compose(ExactSeries({1, 1}, 4), ExactSeries({0, 0, 1}, 4)) == ExactSeries({1, 0, 1}, 4));
    const ExactSeries f({2, 7, 1, 8, 2, 8}, 6);
    CHECK(compose(f, ExactSeries({0, 1}, 6)) == f);
    const ExactSeries fib = compose(ExactSeries::geometric(6), ExactSeries({0, 1, 1}, 6));
    CHECK(fib == ExactSeries({1, 1, 2, 3, 5, 8}, 6));
}

TEST_CASE("compose matches explicit powers and rejects a constant term") {
    std::vector<mpq_class> f = {1, mpq_class(1, 2), -3, 2, 0, 5, 1, -1};
    std::vector<mpq_class> g = {0, 2, mpq_class(-1, 3), 1, 4, 0, 1, 2};
    CHECK(compose(ExactSeries(f), ExactSeries(g)).coeffs() == naive_compose(f, g, 8));
    CHECK_THROWS(compose(ExactSeries({1, 1}, 3), ExactSeries({1, 1}, 3)));
}

TEST_CASE("lagrange_invert examples") {
    const ExactSeries y = lagrange_invert(ExactSeries::geometric(10), 8);
    CHECK(y == ExactSeries({0, 1, 1, 2, 5, 14, 42, 132}, 8));

    CHECK(lagrange_invert(ExactSeries({1}, 6), 6) == ExactSeries({0, 1}, 6));

    const ExactSeries yt = lagrange_invert(longs(kTriangulations), 10);
    for (std::size_t i = 1; i < 10; ++i) CHECK(yt[i] == kInvariants[i - 1]);

    CHECK_THROWS(lagrange_invert(ExactSeries({2, 1}, 5), 5));
}

TEST_CASE("lagrange_invert satisfies y = x A(y)") {
    const ExactSeries A({1, 3, 0, 2, 1, 0, 0, 5}, 12);
    const ExactSeries y = lagrange_invert(A, 12);
    CHECK(y == compose(A, y).times_x(1));
}

TEST_CASE("recover_generator examples") {
    CHECK(recover_generator(longs(kInvariants), 10) == longs(kTriangulations));
    CHECK(recover_generator(ExactSeries({1}, 8), 8) == ExactSeries({1}, 8));
    CHECK_THROWS(recover_generator(ExactSeries({0, 1}, 5), 5));
}

TEST_CASE("roundtrip, integrality and nonnegativity on random generators") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(0, 6);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<mpq_class> a(30);
        a[0] = 1;
        for (std::size_t i = 1; i < a.size(); ++i) a[i] = d(rng);
        const ExactSeries A(a);
        const ExactSeries y = lagrange_invert(A, 31);
        CHECK(y.integral());
        bool nonneg = true;
        for (const auto& c : y.coeffs()) nonneg = nonneg && c >= 0;
        CHECK(nonneg);
        CHECK(recover_generator(y.divided_by_x(1), 30) == A);
    }
}

TEST_CASE("log_one_minus_coeff examples and brute force") {
    CHECK(log_one_minus_coeff(0, 5) == mpq_class(-1, 5));
    CHECK(log_one_minus_coeff(1, 3) == mpq_class(1, 6));
    CHECK(log_one_minus_coeff(6, 7) == mpq_class(-1, 7));
    for (long k = 0; k <= 6; ++k)
        for (long n = k + 1; n <= 30; ++n) CHECK(log_one_minus_coeff(k, n) == brute_log_coeff(k, n));
    CHECK_THROWS(log_one_minus_coeff(3, 3));
}

TEST_CASE("superadditivity of the triangulation counts") {
    const std::size_t N = 300;
    const auto b = ExactSeries::from_integers(bn_exact_sequence(N));
    const auto a = recover_generator(b, N + 1).integers();
    bool ok = true;
    for (std::size_t n = 2; n <= N; ++n)
        for (std::size_t m = 2; n + m - 2 <= N; ++m) ok = ok && a[n + m - 2] >= a[n] * a[m];
    CHECK(ok);
}

TEST_CASE("serialization roundtrip and rejection") {
    const ExactSeries s(std::vector<mpq_class>{1, mpq_class(-3, 7), 0, mpq_class(22, 5)});
    std::stringstream io;
    write_series(io, s);
    CHECK(io.str() == "0 1/1\n1 -3/7\n2 0/1\n3 22/5\n");
    CHECK(read_series(io) == s);

    std::istringstream gap("0 1/1\n2 3/1\n");
    CHECK_THROWS(read_series(gap));
    std::istringstream zero("0 1/0\n");
    CHECK_THROWS(read_series(zero));
}
