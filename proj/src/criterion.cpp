#include "g2t/criterion.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace g2t {

const char* to_string(Branch b) { return b == Branch::strict ? "strict" : "sharp"; }

long gcd_period(const Generator& A, std::size_t probe) {
    if (probe < 10) throw std::domain_error("probe at least 10 coefficients");
    const ExactSeries a = A.coefficients(probe);
    long g = 0;
    for (std::size_t n = 1; n < a.order(); ++n)
        if (a[n] != 0) g = std::gcd(g, static_cast<long>(n));
    if (g == 0) throw std::domain_error("all probed coefficients beyond the constant vanish");
    return g;
}

namespace {

mpq_class lower_rational(const PrecReal& x) {
    mpfr_t lo;
    mpfr_init2(lo, mpfr_get_prec(x.mid()));
    mpfr_sub(lo, x.mid(), x.rad(), MPFR_RNDD);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), lo);
    mpfr_clear(lo);
    return q;
}

class MonotoneGuard {
public:
    void record(const mpq_class& z, const PrecReal& hz) {
        for (const auto& [zz, hh] : seen_) {
            const bool later = z > zz;
            const PrecReal diff = later ? hz - hh : hh - hz;
            if (diff.positive()) throw InvariantViolation("h = A - zA' increases; coefficients cannot be nonnegative");
        }
        seen_.emplace_back(z, hz);
        if (seen_.size() > 4) seen_.erase(seen_.begin());
    }

private:
    std::vector<std::pair<mpq_class, PrecReal>> seen_;
};

PrecReal bisect(const Generator& A, mpq_class lo, mpq_class hi, const mpq_class& tol, Precision p,
                MonotoneGuard& guard) {
    while (hi - lo > tol) {
        const mpq_class mid = (lo + hi) / 2;
        const PrecReal hm = A.h(PrecReal(mid, p));
        guard.record(mid, hm);
        if (hm.positive()) lo = mid;
        else if (hm.negative()) hi = mid;
        else {
            lo = mid;
            hi = mid;
            break;
        }
    }
    PrecReal tau(mpq_class((lo + hi) / 2), p);
    Mpfr half(64);
    const mpq_class hw = (hi - lo) / 2;
    mpfr_set_q(half.get(), hw.get_mpq_t(), MPFR_RNDU);
    tau.inflate(half);
    return tau;
}

}  // namespace

TauSearch find_tau(const Generator& A, const std::optional<PrecReal>& R, const mpq_class& tol, Precision p) {
    TauSearch out;
    MonotoneGuard guard;
    guard.record(0, PrecReal(1, p));
    if (!R) {
        mpq_class z = 1;
        for (int k = 0; k < 128; ++k, z *= 2) {
            const PrecReal hz = A.h(PrecReal(z, p));
            guard.record(z, hz);
            if (!hz.positive()) {
                out.tau = bisect(A, 0, z, tol, p, guard);
                return out;
            }
        }
        return out;
    }
    const mpq_class r_lo = lower_rational(*R);
    if (A.evaluable_at_radius()) {
        const PrecReal hR = A.h(*R);
        out.h_at_R = hR;
        if (hR.positive()) return out;
        if (!hR.negative()) {
            out.boundary_root = true;
            return out;
        }
        out.tau = bisect(A, 0, r_lo, tol, p, guard);
        return out;
    }
    // pole at R: approach it from below
    mpq_class gap = r_lo / 2;
    for (long k = 1; k <= p.bits; ++k, gap /= 2) {
        const mpq_class z = r_lo - gap;
        const PrecReal hz = A.h(PrecReal(z, p));
        guard.record(z, hz);
        if (!hz.positive()) {
            out.tau = bisect(A, 0, z, tol, p, guard);
            return out;
        }
    }
    return out;
}

double empirical_exponent_scaled(const std::vector<double>& scaled) {
    if (scaled.size() < 50) throw std::domain_error("need at least 50 coefficients");
    const std::size_t start = scaled.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t n = std::max<std::size_t>(start, 1); n < scaled.size(); ++n) {
        if (!(scaled[n] > 0)) throw std::domain_error("nonpositive coefficient in the fitted tail");
        const double x = -std::log(static_cast<double>(n)), y = std::log(scaled[n]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    const double md = static_cast<double>(m);
    return (md * sxy - sx * sy) / (md * sxx - sx * sx);
}

double empirical_exponent(const std::vector<mpq_class>& y, const PrecReal& r_inv) {
    // log(y_n r^n) kept in log space: y_n itself overflows doubles.
    const double log_r = -std::log(r_inv.mid_double());
    std::vector<double> logs(y.size(), 0);
    for (std::size_t n = 0; n < y.size(); ++n) {
        if (y[n] <= 0) {
            logs[n] = -INFINITY;
            continue;
        }
        long en = 0, ed = 0;
        const double mn = mpz_get_d_2exp(&en, y[n].get_num_mpz_t());
        const double md = mpz_get_d_2exp(&ed, y[n].get_den_mpz_t());
        logs[n] = std::log(mn / md) + static_cast<double>(en - ed) * std::log(2.0) + static_cast<double>(n) * log_r;
    }
    std::vector<double> scaled(y.size());
    // shift keeps exp() in range; a constant offset does not change the slope
    const double shift = logs.back();
    for (std::size_t n = 0; n < y.size(); ++n) scaled[n] = std::exp(logs[n] - shift);
    return empirical_exponent_scaled(scaled);
}

CriterionReport analyze(const Generator& A, int digits) {
    const Precision p = Precision::digits(digits);
    const ExactSeries a = A.coefficients(A.order());
    if (a[0] != 1) throw InvariantViolation("constant coefficient must be 1");
    for (std::size_t n = 1; n < a.order(); ++n)
        if (a[n] < 0) throw InvariantViolation("negative coefficient at index " + std::to_string(n));

    CriterionReport rep;
    rep.gcd_period = gcd_period(A, std::max<std::size_t>(A.order(), 10));
    rep.R = A.radius(p);

    mpq_class tol(1);
    mpz_mul_2exp(tol.get_den_mpz_t(), tol.get_den_mpz_t(), static_cast<mp_bitcnt_t>(std::ceil(digits * 3.3219 * 2 / 3)));
    const TauSearch ts = find_tau(A, rep.R, tol, p);
    rep.boundary_root = ts.boundary_root;

    std::optional<ExactSeries> y;
    if (ts.tau) {
        rep.branch = Branch::strict;
        rep.tau = ts.tau;
        const Jet j = A.jet(*ts.tau);
        rep.r = *ts.tau / j.value;
        rep.C = sqrt(j.value / (j.d2 * PrecReal::pi(p) * mpq_class(2)));
    } else {
        rep.branch = Branch::sharp;
        if (!rep.R) throw InvariantViolation("entire generator without a root of h");
        if (!A.evaluable_at_radius())
            throw InvariantViolation("sharp branch needs the generator at its radius");
        const Jet j = A.jet(*rep.R);
        rep.r = *rep.R / j.value;
        // y(r) from the tree series
        const std::size_t N = A.order();
        y = A.tree_series(N);
        PrecReal sum(0L, p), pw(1, p);
        for (std::size_t n = 0; n < N; ++n) {
            if ((*y)[n] != 0) sum += pw * (*y)[n];
            pw *= rep.r;
        }
        const auto tail = A.tree_tail_bound(rep.r.mid_double(), N);
        if (tail) {
            sum.inflate(*tail / 2);
            sum += PrecReal(mpq_class(*tail / 2), p);
            rep.y_tail_declared = true;
        }
        rep.y_at_r = sum;
    }

    if (A.order() >= 50) {
        try {
            if (!y) y = A.tree_series(A.order());
            rep.alpha_fit = empirical_exponent(y->coeffs(), PrecReal(1, p) / rep.r);
        } catch (const std::domain_error&) {
        }
    }
    return rep;
}

}  // namespace g2t
