#include "g2t/sing.hpp"

#include "g2t/closed_form.hpp"
#include "g2t/exact_series.hpp"
#include "g2t/special.hpp"

#include <cmath>
#include <stdexcept>

namespace g2t {

PrecReal SymRational::value(Precision p) const { return sqrt3_over_pi(p) * q; }

namespace {

// Series in Z = 1 - 7z of polynomials and rational functions of z.
class ZSeries {
public:
    explicit ZSeries(std::size_t len) : len_(len), z_(len) {
        z_[0] = mpq_class(1, 7);
        if (len > 1) z_[1] = mpq_class(-1, 7);
    }

    // sum c_i z^i, coefficients in ascending order
    ExactSeries poly(std::initializer_list<long> c) const {
        std::vector<long> v(c);
        ExactSeries r(len_);
        for (auto it = v.rbegin(); it != v.rend(); ++it) {
            r = mul(r, z_);
            r[0] += *it;
        }
        return r;
    }

    std::size_t len() const { return len_; }

private:
    std::size_t len_;
    ExactSeries z_;
};

struct LogPair {
    mpq_class a, b;
    SymRational C;   // Gamma(a+b+1)/(Gamma(a+1)Gamma(b+1))
    SymRational Pi;  // Gamma(a+b+1)/(Gamma(a)Gamma(b))
};

const LogPair& pair13() {
    static const LogPair p{mpq_class(1, 3), mpq_class(2, 3), {mpq_class(9, 4)}, {mpq_class(1, 2)}};
    return p;
}

const LogPair& pair23() {
    static const LogPair p{mpq_class(2, 3), mpq_class(4, 3), {mpq_class(27, 8)}, {mpq_class(3)}};
    return p;
}

// Pieces of the expansion shared by the exact g pipeline and the ball f pipeline.
struct Pieces {
    ExactSeries e13, e23;  // R_1 / (30 z^5), R_2 / (30 z^5)
    ExactSeries hp;        // 5 P / (30 z^5)
    ExactSeries w;         // 1 - phi = Z u(Z)
};

Pieces pieces(std::size_t len) {
    const ZSeries zs(len);
    const ExactSeries zp1sq = zs.poly({1, 2, 1});
    const ExactSeries h = zs.poly({0, 0, 0, 0, 0, 30}).reciprocal();
    const ExactSeries r1 = mul(mul(zp1sq, zs.poly({5, 60, 45, 214})), zs.poly({-1, 1}).reciprocal());
    const ExactSeries r2 = mul(mul(zp1sq, zs.poly({0, 0, 30, 444, 606})), zs.poly({1, -2, 1}).reciprocal());
    const ExactSeries u = mul(zs.poly({1, 4, 4}), zs.poly({1, -3, 3, -1}).reciprocal());
    Pieces p{mul(h, r1), mul(h, r2), mul(h, zs.poly({5, 75, 230, 330, 140})), u.times_x(1)};
    return p;
}

// t_k = (a+1)_k (b+1)_k / (k! (k+1)!)
std::vector<mpq_class> t_coeffs(const mpq_class& a, const mpq_class& b, std::size_t count) {
    std::vector<mpq_class> t(count);
    if (count == 0) return t;
    t[0] = 1;
    for (std::size_t k = 1; k < count; ++k) {
        const long j = static_cast<long>(k) - 1;
        t[k] = t[k - 1] * (a + 1 + j) * (b + 1 + j) / mpq_class((j + 1) * (j + 2));
    }
    return t;
}

// E * t_k * w^(k+1) for k = 0 .. len-2
std::vector<ExactSeries> log_terms(const ExactSeries& e, const ExactSeries& w, const LogPair& pr) {
    const std::size_t len = e.order();
    const auto t = t_coeffs(pr.a, pr.b, len);
    std::vector<ExactSeries> out;
    ExactSeries wp = w;
    for (std::size_t k = 0; k + 1 < len; ++k) {
        out.push_back(mul(e, wp) * t[k]);
        wp = mul(wp, w);
    }
    return out;
}

void check_order(std::size_t order) {
    if (order == 0 || order > kMaxExpansionOrder)
        throw std::out_of_range("expansion order must lie in 1.." + std::to_string(kMaxExpansionOrder));
}

struct GSeries {
    std::vector<mpq_class> part13, part23;
    std::vector<SymRational> g;
};

GSeries g_exact(std::size_t order, const Pieces& pc, const std::vector<ExactSeries>& l13,
                const std::vector<ExactSeries>& l23) {
    GSeries out;
    out.part13.assign(order, 0);
    out.part23.assign(order, 0);
    for (const auto& s : l13)
        for (std::size_t n = 0; n < order; ++n) out.part13[n] += s[n];
    for (const auto& s : l23)
        for (std::size_t n = 0; n < order; ++n) out.part23[n] += s[n];
    for (std::size_t n = 0; n < order; ++n)
        out.g.push_back(pair13().Pi * out.part13[n] + pair23().Pi * out.part23[n]);
    (void)pc;
    return out;
}

std::vector<mpz_class> stirling2_row(std::size_t n, std::size_t kmax) {
    // S(m, k) by the usual recurrence; returns S(n, 0..kmax)
    std::vector<std::vector<mpz_class>> s(n + 1, std::vector<mpz_class>(kmax + 1));
    s[0][0] = 1;
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t k = 1; k <= std::min(m, kmax); ++k)
            s[m][k] = mpz_class(static_cast<unsigned long>(k)) * s[m - 1][k] + s[m - 1][k - 1];
    return s[n];
}

std::vector<PrecReal> poly_mul(const std::vector<PrecReal>& a, const std::vector<PrecReal>& b, std::size_t deg,
                               Precision p) {
    std::vector<PrecReal> r(deg + 1, PrecReal(0L, p));
    for (std::size_t i = 0; i < a.size() && i <= deg; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= deg; ++j) r[i + j] += a[i] * b[j];
    return r;
}

}  // namespace

SingExpansionB expand_fg(std::size_t order, Precision p) {
    check_order(order);
    const Precision wp = p.widened(32);
    const Pieces pc = pieces(order);
    const auto l13 = log_terms(pc.e13, pc.w, pair13());
    const auto l23 = log_terms(pc.e23, pc.w, pair23());
    GSeries gs = g_exact(order, pc, l13, l23);

    const auto c13 = connection_psi_terms(pair13().a, pair13().b, l13.size(), wp);
    const auto c23 = connection_psi_terms(pair23().a, pair23().b, l23.size(), wp);
    const PrecReal s3pi = sqrt3_over_pi(wp);

    SingExpansionB out;
    out.order = order;
    for (std::size_t n = 0; n < order; ++n) {
        const mpq_class rational_part = pc.hp[n];
        const mpq_class sym_part = pair13().C.q * pc.e13[n] + pair23().C.q * pc.e23[n];
        PrecReal psi_part(0L, wp);
        for (std::size_t k = 0; k < l13.size(); ++k)
            if (l13[k][n] != 0) psi_part += c13[k] * (pair13().Pi.q * l13[k][n]);
        for (std::size_t k = 0; k < l23.size(); ++k)
            if (l23[k][n] != 0) psi_part += c23[k] * (pair23().Pi.q * l23[k][n]);
        PrecReal fn = PrecReal(rational_part, wp) + s3pi * (psi_part + PrecReal(sym_part, wp));
        out.f.push_back(fn.with_precision(p));
    }
    out.g = std::move(gs.g);
    out.g_part_13 = std::move(gs.part13);
    out.g_part_23 = std::move(gs.part23);
    return out;
}

SingExpansionB expand_fg(std::size_t order, int digits) { return expand_fg(order, Precision::digits(digits)); }

std::vector<mpq_class> kappa(std::size_t i_max) {
    if (i_max < 7 || i_max > kMaxExpansionOrder)
        throw std::out_of_range("kappa index must lie in 7.." + std::to_string(kMaxExpansionOrder));
    const Pieces pc = pieces(i_max);
    const auto l13 = log_terms(pc.e13, pc.w, pair13());
    const auto l23 = log_terms(pc.e23, pc.w, pair23());
    const GSeries gs = g_exact(i_max, pc, l13, l23);
    // [z^n] Z^k log Z = 7^n (-1)^(k+1) k! / (n (n-1) ... (n-k)), and
    // 1 / (n (n-1) ... (n-k)) = sum_{i > k} S(i-1, k) n^-i.
    std::vector<mpq_class> out;
    for (std::size_t i = 7; i <= i_max; ++i) {
        const auto s2 = stirling2_row(i - 1, i - 1);
        mpq_class sum = 0;
        mpz_class fact = 720;  // 6!
        for (std::size_t k = 6; k <= i - 1; ++k) {
            if (k > 6) fact *= static_cast<unsigned long>(k);
            const mpq_class term = fact * gs.g[k].q * s2[k];
            sum += (k % 2 == 1) ? term : mpq_class(-term);
        }
        out.push_back(sum);
    }
    return out;
}

PrecReal asym_bn_scaled(std::size_t n, const std::vector<mpq_class>& kappas, std::size_t order, Precision p) {
    if (n < 1) throw std::domain_error("asymptotic evaluation needs n >= 1");
    if (order < 7) throw std::domain_error("asymptotic order starts at 7");
    if (order - 7 >= kappas.size()) throw std::out_of_range("order beyond the computed kappa range");
    mpq_class sum = 0;
    mpz_class npow = 1;
    for (std::size_t i = 1; i < 7; ++i) npow *= static_cast<unsigned long>(n);
    for (std::size_t i = 7; i <= order; ++i) {
        npow *= static_cast<unsigned long>(n);
        sum += kappas[i - 7] / npow;
    }
    return sqrt3_over_pi(p) * sum;
}

PrecReal asym_bn(std::size_t n, std::size_t order, int digits) {
    const Precision p = Precision::digits(digits);
    if (order < 7) throw std::domain_error("asymptotic order starts at 7");
    return pow(PrecReal(7, p), static_cast<long>(n)) * asym_bn_scaled(n, kappa(order), order, p);
}

PsiExpansion bootstrap_psi(int digits, int iterations) {
    if (iterations < 1) throw std::domain_error("at least one substitution is needed");
    const Precision p = Precision::digits(digits);
    const Precision wp = p.widened(64);
    const SingExpansionB fg = expand_fg(8, wp);
    const auto& f = fg.f;
    const PrecReal g6 = fg.g[6].value(wp);
    const PrecReal d = f[0] - f[1];

    PsiExpansion out;
    out.q_coeffs.reserve(5);
    for (int i = 2; i <= 5; ++i) out.q_coeffs.push_back((f[i - 1] - f[i]) / d);
    out.q_coeffs.push_back((f[5] - f[6] - g6 * log(PrecReal(mpq_class(21, 8), wp))) / d);
    out.log_slope = -g6 / d;
    out.w_scale = f[0] / d;
    out.rho = PrecReal(7, wp) / f[0];

    const std::size_t deg = 6;
    std::vector<PrecReal> w(deg + 1, PrecReal(0L, wp));
    w[1] = PrecReal(1, wp);
    std::vector<PrecReal> y = w;
    for (int t = 0; t < iterations; ++t) {
        std::vector<PrecReal> q(deg + 1, PrecReal(0L, wp));
        std::vector<PrecReal> yp = y;  // Y^i
        for (std::size_t i = 2; i <= 6; ++i) {
            yp = poly_mul(yp, y, deg, wp);
            for (std::size_t j = 0; j <= deg; ++j) q[j] += out.q_coeffs[i - 2] * yp[j];
        }
        for (std::size_t j = 0; j <= deg; ++j) y[j] = w[j] - q[j];
        out.iterates.push_back(y);
    }

    const PrecReal seventh(mpq_class(1, 7), wp);
    out.gamma.push_back(seventh);
    PrecReal kp(1, wp);
    for (std::size_t i = 1; i <= deg; ++i) {
        kp *= out.w_scale;
        out.gamma.push_back(-y[i] * kp * seventh);
    }
    const PrecReal c7 = out.log_slope * seventh * kp;  // (c/7) w_scale^6
    out.gamma[6] += c7 * log(out.w_scale);
    out.C = c7;

    const PrecReal rho = rho_closed(wp), lam = lambda_closed(wp);
    out.C_closed = K_closed(wp) * rho * mpq_class(16807) /
                   (pow(rho * lam + mpq_class(7), 7) * mpq_class(720));
    if (!out.C.certifies(std::pow(10.0, -digits / 2)))
        throw std::runtime_error("bootstrap lost too much precision; raise digits");
    if (!out.C.overlaps(out.C_closed))
        throw CertificationError("bootstrapped C disagrees with its closed form");
    return out;
}

std::vector<PrecReal> reciprocal_poly(const std::vector<PrecReal>& a, std::size_t degree) {
    const Precision p = a.at(0).precision();
    std::vector<PrecReal> r;
    r.push_back(PrecReal(1, p) / a[0]);
    for (std::size_t k = 1; k <= degree; ++k) {
        PrecReal s(0L, p);
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * r[k - j];
        r.push_back(-s / a[0]);
    }
    return r;
}

AExpansion sing_A(const PsiExpansion& psi) {
    AExpansion out;
    out.rho = psi.rho;
    out.C = psi.C;
    out.T = reciprocal_poly(psi.gamma, 6);
    const PrecReal inv_rho = PrecReal(1, psi.rho.precision()) / psi.rho;
    for (std::size_t j = 0; j <= 7; ++j) {
        PrecReal e(0L, psi.rho.precision());
        if (j <= 6) e += out.T[j];
        if (j >= 1) e -= out.T[j - 1];
        out.eta.push_back(e * inv_rho);
    }
    out.log_coeff = -psi.C * mpq_class(49) * inv_rho;
    out.M = psi.C * mpq_class(49 * 720) * inv_rho;
    if (!out.eta[0].overlaps(PrecReal(7, psi.rho.precision()) * inv_rho))
        throw CertificationError("eta(0) differs from 7/rho");
    return out;
}

AExpansion sing_A(int digits) { return sing_A(bootstrap_psi(digits)); }

PrecReal asym_an(const AExpansion& a, std::size_t n) {
    if (n < 1) throw std::domain_error("asym_an needs n >= 1");
    PrecReal n7 = pow(PrecReal(static_cast<long>(n), a.M.precision()), 7);
    return a.M * pow(a.rho, static_cast<long>(n)) / n7;
}

PrecReal asym_an(std::size_t n, int digits) { return asym_an(sing_A(digits), n); }

PrecReal psi_by_inversion(const PrecReal& z, Precision p) {
    mpq_class lo = 0, hi = mpq_class(1, 7);
    mpq_class width_stop = 1;
    mpz_mul_2exp(width_stop.get_den_mpz_t(), width_stop.get_den_mpz_t(), static_cast<mp_bitcnt_t>(p.bits));
    while (hi - lo > width_stop) {
        mpq_class mid = (lo + hi) / 2;
        const PrecReal y = eval_B(mid, p) * mid;
        const PrecReal diff = z - y;
        if (diff.positive()) lo = mid;
        else if (diff.negative()) hi = mid;
        else break;
    }
    PrecReal r(mpq_class((lo + hi) / 2), p);
    Mpfr half(64);
    mpq_class hw = (hi - lo) / 2;
    mpfr_set_q(half.get(), hw.get_mpq_t(), MPFR_RNDU);
    r.inflate(half);
    return r;
}

}  // namespace g2t
