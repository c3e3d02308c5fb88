#include "g2t/special.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace g2t {

namespace {

bool nonpositive_integer(const mpq_class& q) { return q <= 0 && q.get_den() == 1; }

// 64-bit upper bound of |q|.
Mpfr upper(const mpq_class& q) {
    Mpfr r(64);
    mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(r.get(), r.get(), MPFR_RNDU);
    return r;
}

// Upper bound of |x| as a double, rounded outward.
double abs_upper(const PrecReal& x) {
    Mpfr r(64);
    mpfr_abs(r.get(), x.mid(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), x.rad(), MPFR_RNDU);
    return mpfr_get_d(r.get(), MPFR_RNDU);
}

mpq_class two_pow(long e) {
    mpq_class r = 1;
    if (e >= 0) mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    else mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    return r;
}

// Shift target for the asymptotic cores: the minimal Stirling term is then
// below 2^-(bits+10).
long shift_target(Precision p) { return static_cast<long>(std::ceil(0.12 * static_cast<double>(p.bits))) + 8; }

struct Shifted {
    mpq_class x;        // q + m
    std::size_t m = 0;  // number of unit steps
};

Shifted shift_up(const mpq_class& q, Precision p) {
    Shifted s{q, 0};
    const mpq_class target(shift_target(p));
    while (s.x < target) {
        s.x += 1;
        ++s.m;
    }
    return s;
}

// ln Gamma(x) for rational x past the shift target.
PrecReal stirling_lngamma(const mpq_class& x, Precision wp) {
    const mpq_class eps = two_pow(-(wp.bits + 8));
    const mpq_class x2 = x * x;
    mpq_class xpow = x;  // x^(2k-1)
    mpq_class sum = 0;
    mpq_class bound;
    for (unsigned k = 1;; ++k) {
        if (k > 2000) throw std::runtime_error("Stirling series did not reach the target precision");
        sum += bernoulli(2 * k) / (mpq_class(2 * k * (2 * k - 1)) * xpow);
        xpow *= x2;
        bound = abs(bernoulli(2 * k + 2)) / (mpq_class((2 * k + 2) * (2 * k + 1)) * xpow);
        if (bound < eps) break;
    }
    const PrecReal xb(x, wp);
    PrecReal r = PrecReal(mpq_class(x - mpq_class(1, 2)), wp) * log(xb) - xb +
                 log(PrecReal::pi(wp) * mpq_class(2)) * mpq_class(1, 2) + PrecReal(sum, wp);
    r.inflate(upper(bound));
    return r;
}

PrecReal asymptotic_digamma(const mpq_class& x, Precision wp) {
    const mpq_class eps = two_pow(-(wp.bits + 8));
    const mpq_class x2 = x * x;
    mpq_class xpow = x2;  // x^(2k)
    mpq_class sum = -1 / (2 * x);
    mpq_class bound;
    for (unsigned k = 1;; ++k) {
        if (k > 2000) throw std::runtime_error("digamma series did not reach the target precision");
        sum -= bernoulli(2 * k) / (mpq_class(2 * k) * xpow);
        xpow *= x2;
        bound = abs(bernoulli(2 * k + 2)) / (mpq_class(2 * k + 2) * xpow);
        if (bound < eps) break;
    }
    PrecReal r = log(PrecReal(x, wp)) + PrecReal(sum, wp);
    r.inflate(upper(bound));
    return r;
}

}  // namespace

mpq_class bernoulli(unsigned n) {
    static std::mutex mu;
    static std::vector<mpq_class> cache{mpq_class(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        const unsigned m = static_cast<unsigned>(cache.size());
        mpq_class s = 0;
        mpz_class binom = 1;  // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            s += binom * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        cache.push_back(-s / mpq_class(m + 1));
    }
    return cache[n];
}

PrecReal gamma_rational(const mpq_class& q, Precision p) {
    if (nonpositive_integer(q)) throw std::domain_error("gamma has a pole at nonpositive integers");
    const Precision wp = p.widened(16);
    if (q.get_den() == 1 && q <= 3000) {
        mpz_class f = 1;
        for (long j = 2; j < q.get_num().get_si(); ++j) f *= j;
        return PrecReal(f, p);
    }
    if (q < mpq_class(1, 2)) {
        const PrecReal pi = PrecReal::pi(wp);
        const PrecReal s = sin(pi * q);
        return (pi / (s * gamma_rational(1 - q, wp))).with_precision(p);
    }
    const Shifted s = shift_up(q, wp);
    mpq_class rising = 1;
    for (std::size_t j = 0; j < s.m; ++j) rising *= q + static_cast<long>(j);
    return (exp(stirling_lngamma(s.x, wp)) / rising).with_precision(p);
}

PrecReal digamma_rational(const mpq_class& q, Precision p) {
    if (nonpositive_integer(q)) throw std::domain_error("digamma has a pole at nonpositive integers");
    const Precision wp = p.widened(16);
    if (q <= 0) {
        const PrecReal pi = PrecReal::pi(wp);
        const PrecReal arg = pi * q;
        return (digamma_rational(1 - q, wp) - pi * cos(arg) / sin(arg)).with_precision(p);
    }
    const Shifted s = shift_up(q, wp);
    mpq_class harmonic = 0;
    for (std::size_t j = 0; j < s.m; ++j) harmonic += 1 / (q + static_cast<long>(j));
    return (asymptotic_digamma(s.x, wp) - PrecReal(harmonic, wp)).with_precision(p);
}

PrecReal log_prefactor(const mpq_class& a, const mpq_class& b, Precision p) {
    return gamma_rational(a + b + 1, p) / (gamma_rational(a, p) * gamma_rational(b, p));
}

std::vector<PrecReal> connection_psi_terms(const mpq_class& a, const mpq_class& b, std::size_t count,
                                           Precision p) {
    std::vector<PrecReal> out;
    out.reserve(count);
    if (count == 0) return out;
    PrecReal c = digamma_rational(a + 1, p) + digamma_rational(b + 1, p) - digamma_rational(1, p) -
                 digamma_rational(2, p);
    out.push_back(c);
    for (std::size_t k = 1; k < count; ++k) {
        const long kk = static_cast<long>(k);
        c += PrecReal(mpq_class(1 / (a + kk) + 1 / (b + kk) - mpq_class(1, kk) - mpq_class(1, kk + 1)), p);
        out.push_back(c);
    }
    return out;
}

namespace {

PrecReal series_2f1(const mpq_class& a, const mpq_class& b, const mpq_class& c, const PrecReal& z,
                    Precision wp) {
    if (c <= 0 && c.get_den() == 1) throw std::domain_error("2F1 undefined for c a nonpositive integer");
    const double az = abs_upper(z);
    if (az > 0.9 + 1e-12) throw std::domain_error("direct 2F1 series needs |z| <= 0.9");
    const double tol = std::ldexp(1.0, static_cast<int>(-wp.bits - 4));
    const double aa = std::fabs(a.get_d()), ab = std::fabs(b.get_d()), cc = c.get_d();
    PrecReal sum(1, wp), term(1, wp);
    for (long k = 0;; ++k) {
        if (k > 200000) throw std::runtime_error("2F1 series failed to converge");
        mpq_class ratio = (a + k) * (b + k) / ((c + k) * mpq_class(k + 1));
        term = term * ratio * z;
        sum += term;
        const double j = static_cast<double>(k + 1);
        if (j + cc <= 0.5 || j < 2) continue;
        const double r = az * std::max(1.0, (j + aa) / (j + 1)) * std::max(1.0, (j + ab) / (j + cc));
        if (r >= 1) continue;
        const double tail = abs_upper(term) * r / (1 - r);
        if (tail < tol) {
            sum.inflate(tail * (1 + 1e-12));
            return sum;
        }
    }
}

PrecReal connection_2f1(const mpq_class& a, const mpq_class& b, const PrecReal& z, Precision wp) {
    if (a <= 0 || b <= 0) throw std::domain_error("connection formula implemented for a, b > 0");
    const PrecReal w = PrecReal(1, wp) - z;
    if (!w.positive() || abs_upper(w) >= 0.9) throw std::domain_error("connection formula needs 0 < 1 - z < 0.9");
    if (w.contains_zero()) throw std::domain_error("z = 1 belongs to the Gauss branch");
    const double aw = abs_upper(w);
    const double tol = std::ldexp(1.0, static_cast<int>(-wp.bits - 4));
    const double da = a.get_d(), db = b.get_d();
    const double cslope = std::min(da + std::fabs(db - 1), db + std::fabs(da - 1));
    const PrecReal logw = log(w);
    PrecReal c = digamma_rational(a + 1, wp) + digamma_rational(b + 1, wp) - digamma_rational(1, wp) -
                 digamma_rational(2, wp);
    PrecReal u = w;  // t_k w^(k+1)
    PrecReal sum_t(0L, wp), sum_s(0L, wp);
    for (long k = 0;; ++k) {
        if (k > 200000) throw std::runtime_error("connection series failed to converge");
        sum_t += u;
        sum_s += u * c;
        u = u * mpq_class((a + 1 + k) * (b + 1 + k) / mpq_class((k + 1) * (k + 2))) * w;
        const long j = k + 1;
        c += PrecReal(mpq_class(1 / (a + j) + 1 / (b + j) - mpq_class(1, j) - mpq_class(1, j + 1)), wp);
        const double dj = static_cast<double>(j);
        const double r = aw * std::max(1.0, (dj + 1 + da) / (dj + 1)) * std::max(1.0, (dj + 1 + db) / (dj + 2));
        if (r >= 1) continue;
        const double tail_t = abs_upper(u) / (1 - r);
        const double cmax = cslope / dj;
        if (tail_t * (1 + cmax + std::fabs(logw.mid_double())) < tol) {
            sum_t.inflate(tail_t * (1 + 1e-12));
            sum_s.inflate(tail_t * cmax * (1 + 1e-12));
            break;
        }
    }
    const PrecReal cab = gamma_rational(a + b + 1, wp) / (gamma_rational(a + 1, wp) * gamma_rational(b + 1, wp));
    return cab + log_prefactor(a, b, wp) * (sum_s + logw * sum_t);
}

PrecReal gauss_2f1(const mpq_class& a, const mpq_class& b, const mpq_class& c, Precision wp) {
    if (c - a - b <= 0) throw std::domain_error("Gauss value needs c - a - b > 0");
    return gamma_rational(c, wp) * gamma_rational(c - a - b, wp) /
           (gamma_rational(c - a, wp) * gamma_rational(c - b, wp));
}

bool exactly_one(const PrecReal& z) { return z.exact() && mpfr_cmp_ui(z.mid(), 1) == 0; }

}  // namespace

PrecReal hyp2f1(const mpq_class& a, const mpq_class& b, const mpq_class& c, const PrecReal& z,
                Precision p, Hyp2f1Path path) {
    const Precision wp = p.widened(32);
    if (path == Hyp2f1Path::automatic) {
        if (exactly_one(z)) path = Hyp2f1Path::gauss;
        else if (abs_upper(z) <= 0.9) path = Hyp2f1Path::series;
        else if (c == a + b + 1) path = Hyp2f1Path::connection;
        else throw std::domain_error("2F1 argument outside the supported regimes");
    }
    switch (path) {
        case Hyp2f1Path::series: return series_2f1(a, b, c, z, wp).with_precision(p);
        case Hyp2f1Path::connection:
            if (c != a + b + 1) throw std::domain_error("connection formula needs c = a + b + 1");
            return connection_2f1(a, b, z, wp).with_precision(p);
        case Hyp2f1Path::gauss:
            if (!exactly_one(z)) throw std::domain_error("Gauss branch needs z = 1 exactly");
            return gauss_2f1(a, b, c, wp).with_precision(p);
        default: break;
    }
    throw std::logic_error("unreachable");
}

}  // namespace g2t
