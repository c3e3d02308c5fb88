#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2t/closed_form.hpp"
#include "g2t/special.hpp"
#include "g2t/walk.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace g2t;

namespace {

const Precision P60 = Precision::digits(60);

// Oracle: Bernoulli numbers by the Akiyama-Tanigawa algorithm (B_1 = +1/2 convention).
std::vector<mpq_class> bernoulli_at(std::size_t count) {
    std::vector<mpq_class> out, row(count + 1);
    for (std::size_t m = 0; m <= count; ++m) {
        row[m] = mpq_class(1, static_cast<long>(m + 1));
        for (std::size_t j = m; j >= 1; --j) row[j - 1] = static_cast<long>(j) * (row[j - 1] - row[j]);
        out.push_back(row[0]);
    }
    return out;
}

// Oracle: Euler's constant from Euler-Maclaurin on H_N - log N, N = 50, 40 correction terms.
std::string euler_gamma_oracle() {
    const long N = 50;
    const auto B = bernoulli_at(82);
    mpq_class h = 0;
    for (long k = 1; k <= N; ++k) h += mpq_class(1, k);
    h -= mpq_class(1, 2 * N);
    mpq_class npow = N * N;
    for (long k = 1; k <= 40; ++k) {
        h += B[2 * k] / (mpq_class(2 * k) * npow);
        npow *= N * N;
    }
    mpfr_t v, l;
    mpfr_inits2(400, v, l, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(v, h.get_mpq_t(), MPFR_RNDN);
    mpfr_set_si(l, N, MPFR_RNDN);
    mpfr_log(l, l, MPFR_RNDN);
    mpfr_sub(v, v, l, MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.55Rf", v);
    mpfr_clears(v, l, static_cast<mpfr_ptr>(nullptr));
    return std::string(buf).substr(0, 52);
}

const char* kEulerGamma50 = "0.57721566490153286060651209008240243104215933593992";

PrecReal from_decimal(const char* s, Precision p) {
    mpq_class q;
    std::string str(s);
    const auto dot = str.find('.');
    const std::string digits = str.substr(0, dot) + str.substr(dot + 1);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, str.size() - dot - 1);
    q = mpq_class(mpz_class(digits, 10), den);
    q.canonicalize();
    return PrecReal(q, p);
}

bool close(const PrecReal& a, const PrecReal& b, double tol) {
    return std::fabs((a - b).mid_double()) < tol && a.certifies(tol) && b.certifies(tol);
}

}  // namespace

TEST_CASE("Euler's constant reference") {
    CHECK(euler_gamma_oracle() == kEulerGamma50);
}

TEST_CASE("gamma_rational") {
    CHECK(gamma_rational(1, P60).contains(1));
    CHECK(gamma_rational(5, P60).contains(24));
    const PrecReal prod = gamma_rational(mpq_class(1, 3), P60) * gamma_rational(mpq_class(2, 3), P60);
    const PrecReal target = PrecReal::pi(P60) * mpq_class(2) / sqrt(PrecReal(3, P60));
    CHECK(prod.overlaps(target));
    CHECK(close(prod, target, 1e-55));
    CHECK_THROWS(gamma_rational(0, P60));
    CHECK_THROWS(gamma_rational(-3, P60));

    // independent reference from MPFR's own gamma
    mpfr_t ref;
    mpfr_init2(ref, 300);
    mpfr_set_ui(ref, 7, MPFR_RNDN);
    mpfr_div_ui(ref, ref, 5, MPFR_RNDN);
    mpfr_gamma(ref, ref, MPFR_RNDN);
    const PrecReal g = gamma_rational(mpq_class(7, 5), P60);
    mpfr_sub(ref, ref, g.mid(), MPFR_RNDN);
    CHECK(std::fabs(mpfr_get_d(ref, MPFR_RNDN)) < 1e-58);
    mpfr_clear(ref);
}

TEST_CASE("digamma_rational") {
    const PrecReal eg = from_decimal(kEulerGamma50, P60);
    CHECK(close(digamma_rational(1, P60), -eg, 1e-49));
    CHECK(close(digamma_rational(2, P60), PrecReal(1, P60) - eg, 1e-49));
    const PrecReal half = -eg - PrecReal::log2(P60) * mpq_class(2);
    CHECK(close(digamma_rational(mpq_class(1, 2), P60), half, 1e-49));
    CHECK(digamma_rational(1, P60).overlaps(-PrecReal::euler_gamma(P60)));
    CHECK_THROWS(digamma_rational(0, P60));
    CHECK_THROWS(digamma_rational(-2, P60));
}

TEST_CASE("hyp2f1 regimes") {
    const mpq_class a(1, 3), b(2, 3);
    CHECK(hyp2f1(a, b, 2, PrecReal(0L, P60), P60).contains(1));

    const PrecReal gauss = hyp2f1(a, b, 2, PrecReal(1, P60), P60);
    const PrecReal expected =
        gamma_rational(2, P60) * gamma_rational(1, P60) /
        (gamma_rational(mpq_class(5, 3), P60) * gamma_rational(mpq_class(4, 3), P60));
    CHECK(gauss.overlaps(expected));
    CHECK(close(gauss, expected, 1e-55));

    const PrecReal half(mpq_class(1, 2), P60);
    const PrecReal s = hyp2f1(a, b, 2, half, P60, Hyp2f1Path::series);
    const PrecReal c = hyp2f1(a, b, 2, half, P60, Hyp2f1Path::connection);
    CHECK(s.overlaps(c));
    CHECK(std::fabs((s - c).mid_double()) < 1e-55);

    CHECK_THROWS(hyp2f1(a, b, mpq_class(5, 2), PrecReal(mpq_class(95, 100), P60), P60));
    CHECK_THROWS(hyp2f1(a, b, 2, PrecReal(mpq_class(1, 2), P60), P60, Hyp2f1Path::gauss));
}

TEST_CASE("connection formula identity at random points") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(101, 899);
    const std::pair<mpq_class, mpq_class> params[] = {{mpq_class(1, 3), mpq_class(2, 3)},
                                                      {mpq_class(2, 3), mpq_class(4, 3)},
                                                      {mpq_class(1, 2), mpq_class(5, 4)}};
    int agree = 0;
    for (int i = 0; i < 20; ++i) {
        const auto& [a, b] = params[i % 3];
        const PrecReal z(mpq_class(d(rng), 1000), P60);
        const PrecReal s = hyp2f1(a, b, a + b + 1, z, P60, Hyp2f1Path::series);
        const PrecReal c = hyp2f1(a, b, a + b + 1, z, P60, Hyp2f1Path::connection);
        agree += s.overlaps(c) ? 1 : 0;
    }
    CHECK(agree == 20);
}

TEST_CASE("eval_B") {
    const PrecReal b7 = eval_B(mpq_class(1, 7), P60);
    CHECK(b7.overlaps(PrecReal(7, P60) / rho_closed(P60)));
    CHECK(b7.within(1.0262, 1.0263));
    CHECK(eval_B(0, P60).contains(1));

    // exact partial sum to N = 200 plus the geometric tail from b_n <= 7^n
    const auto b = bn_exact_sequence(200);
    mpq_class partial = 0, pw = 1;
    for (std::size_t n = 0; n <= 200; ++n) {
        partial += b[n] * pw;
        pw /= 10;
    }
    const PrecReal tenth = eval_B(mpq_class(1, 10), P60);
    const double tail = std::pow(0.7, 201) / 0.3;
    PrecReal window(partial, P60);
    window += PrecReal(mpq_class(tail / 2), P60);
    window.inflate(tail / 2 * 1.000001);
    CHECK(tenth.overlaps(window));
    CHECK(tenth.certifies(1e-50));

    // series branch near zero agrees with the closed form at the switch
    const PrecReal near = eval_B(mpq_class(1, 21), P60);
    const PrecReal far = eval_B(mpq_class(1, 19), P60);
    CHECK(near.within(1.0, 1.1));
    CHECK(far.within(1.0, 1.1));

    CHECK_THROWS(eval_B(mpq_class(1, 6), P60));
    CHECK_THROWS(eval_B(mpq_class(-1, 2), P60));
}

TEST_CASE("constants certify and match printed approximations") {
    const auto recs = constants(60);
    REQUIRE(recs.size() == 6);
    for (const auto& r : recs) {
        INFO(r.name);
        CHECK(r.certified);
        CHECK(r.value.overlaps(r.route));
        const std::string& approx = r.paper_approx;
        const auto dot = approx.find('.');
        const double unit = std::pow(10.0, -static_cast<double>(approx.size() - dot - 1));
        CHECK(std::fabs(r.value.mid_double() - std::stod(approx)) < unit);
        CHECK(r.value.certifies(1e-50));
    }
    const auto& rho = recs[0].value;
    CHECK((rho * eval_B(mpq_class(1, 7), P60)).overlaps(PrecReal(7, P60)));
    CHECK(recs[5].value.within(0, 1));
}

TEST_CASE("ball soundness under doubled digits") {
    const auto lo = constants(60);
    const auto hi = constants(120);
    for (std::size_t i = 0; i < lo.size(); ++i) {
        INFO(lo[i].name);
        mpfr_t d;
        mpfr_init2(d, 500);
        mpfr_sub(d, hi[i].value.mid(), lo[i].value.mid(), MPFR_RNDN);
        mpfr_abs(d, d, MPFR_RNDN);
        CHECK(mpfr_cmp(d, lo[i].value.rad()) <= 0);
        mpfr_sub(d, hi[i].route.mid(), lo[i].route.mid(), MPFR_RNDN);
        mpfr_abs(d, d, MPFR_RNDN);
        CHECK(mpfr_cmp(d, lo[i].route.rad()) <= 0);
        mpfr_clear(d);
        CHECK(hi[i].value.rad_double() < lo[i].value.rad_double());
    }
}

TEST_CASE("corrupted closed form fails certification") {
    // y_prime and A_prime are built from rho and lambda, so those two propagate
    const std::map<std::string, std::set<std::string>> failing = {
        {"rho", {"rho", "y_prime", "A_prime"}},
        {"lambda", {"lambda", "y_prime", "A_prime"}},
        {"K", {"K"}},
        {"M", {"M"}},
        {"y_prime", {"y_prime"}},
        {"A_prime", {"A_prime"}}};
    for (const auto& [name, bad] : failing) {
        const auto recs = constants(60, name);
        for (const auto& r : recs) {
            INFO(name, " -> ", r.name);
            CHECK(r.certified == !bad.contains(r.name));
        }
    }
    CHECK_THROWS(constants(29));
}

TEST_CASE("ball arithmetic basics") {
    const PrecReal third(mpq_class(1, 3), P60);
    CHECK(third.contains(mpq_class(1, 3)));
    CHECK((third * mpq_class(3)).contains(1));
    CHECK_FALSE(third.exact());
    CHECK(sqrt(PrecReal(2, P60)).within(1.414, 1.415));
    CHECK(hull(PrecReal(1, P60), PrecReal(2, P60)).contains(mpq_class(3, 2)));
    CHECK(PrecReal(-2, P60).negative());
    CHECK_THROWS(log(PrecReal(0L, P60)));
}
