#include "g2t/prec_real.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace g2t {

namespace {
constexpr long kRadBits = 64;

long max_bits(const PrecReal& a, const PrecReal& b) {
    return std::max(a.precision().bits, b.precision().bits);
}

std::string format(const char* fmt, int n, mpfr_srcptr x) {
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, fmt, n, x) < 0) throw std::runtime_error("mpfr_asprintf failed");
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}
}  // namespace

Precision Precision::digits(int d, int guard_bits) {
    return Precision{static_cast<long>(std::ceil(d * 3.321928094887362)) + guard_bits};
}

int Precision::decimal_digits() const {
    return static_cast<int>(std::floor(bits * 0.30102999566398120));
}

Mpfr::Mpfr(long bits) { mpfr_init2(value_, bits); mpfr_set_zero(value_, 1); }

Mpfr::Mpfr(const Mpfr& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

PrecReal::PrecReal(Precision p) : mid_(p.bits), rad_(kRadBits) {}

PrecReal::PrecReal(long v, Precision p) : mid_(p.bits), rad_(kRadBits) {
    round_error(mpfr_set_si(mid_.get(), v, MPFR_RNDN));
}

PrecReal::PrecReal(const mpz_class& v, Precision p) : mid_(p.bits), rad_(kRadBits) {
    round_error(mpfr_set_z(mid_.get(), v.get_mpz_t(), MPFR_RNDN));
}

PrecReal::PrecReal(const mpq_class& v, Precision p) : mid_(p.bits), rad_(kRadBits) {
    round_error(mpfr_set_q(mid_.get(), v.get_mpq_t(), MPFR_RNDN));
}

PrecReal PrecReal::pi(Precision p) {
    PrecReal r(p);
    r.round_error(mpfr_const_pi(r.mid_.get(), MPFR_RNDN));
    return r;
}

PrecReal PrecReal::euler_gamma(Precision p) {
    PrecReal r(p);
    r.round_error(mpfr_const_euler(r.mid_.get(), MPFR_RNDN));
    return r;
}

PrecReal PrecReal::log2(Precision p) {
    PrecReal r(p);
    r.round_error(mpfr_const_log2(r.mid_.get(), MPFR_RNDN));
    return r;
}

bool PrecReal::finite() const {
    return mpfr_number_p(mid_.get()) && mpfr_number_p(rad_.get());
}

void PrecReal::round_error(int ternary) {
    if (ternary == 0) return;
    Mpfr e = abs_mid_up();
    mpfr_mul_2si(e.get(), e.get(), 1 - precision().bits, MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

Mpfr PrecReal::abs_mid_up() const {
    Mpfr e(kRadBits);
    mpfr_abs(e.get(), mid_.get(), MPFR_RNDU);
    return e;
}

std::string PrecReal::mid_string(int sig) const {
    return format("%.*Re", std::max(sig - 1, 0), mid_.get());
}

std::string PrecReal::rad_string() const {
    return format("%.*RUe", 2, rad_.get());
}

bool PrecReal::contains(const mpq_class& q) const {
    Mpfr d(precision().bits + 64);
    mpfr_set_q(d.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(d.get(), d.get(), mid_.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    // d carries a relative rounding error far below the comparison granularity
    return mpfr_lessequal_p(d.get(), rad_.get()) != 0;
}

bool PrecReal::contains_zero() const {
    Mpfr a = abs_mid_up();
    return mpfr_lessequal_p(mid_.get(), rad_.get()) && mpfr_lessequal_p(a.get(), rad_.get());
}

bool PrecReal::overlaps(const PrecReal& other) const {
    Mpfr d(max_bits(*this, other) + 8);
    mpfr_sub(d.get(), mid_.get(), other.mid_.get(), MPFR_RNDN);
    mpfr_abs(d.get(), d.get(), MPFR_RNDN);
    Mpfr r(kRadBits);
    mpfr_add(r.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
    // slack for the rounding of d itself
    Mpfr slack(kRadBits);
    mpfr_mul_2si(slack.get(), d.get(), 2 - static_cast<long>(mpfr_get_prec(d.get())), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), slack.get(), MPFR_RNDU);
    return mpfr_lessequal_p(d.get(), r.get()) != 0;
}

bool PrecReal::positive() const {
    Mpfr lo(precision().bits + 8);
    mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return mpfr_sgn(lo.get()) > 0;
}

bool PrecReal::negative() const {
    Mpfr hi(precision().bits + 8);
    mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return mpfr_sgn(hi.get()) < 0;
}

bool PrecReal::within(double lo, double hi) const {
    Mpfr a(precision().bits + 8), b(precision().bits + 8);
    mpfr_sub(a.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    mpfr_add(b.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return mpfr_cmp_d(a.get(), lo) > 0 && mpfr_cmp_d(b.get(), hi) < 0;
}

bool PrecReal::certifies(double t) const {
    return mpfr_cmp_d(rad_.get(), t / 10.0) < 0;
}

PrecReal& PrecReal::inflate(const Mpfr& err) {
    Mpfr e(kRadBits);
    mpfr_abs(e.get(), err.get(), MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
    return *this;
}

PrecReal& PrecReal::inflate(double err) {
    mpfr_add_d(rad_.get(), rad_.get(), std::fabs(err), MPFR_RNDU);
    return *this;
}

PrecReal PrecReal::with_precision(Precision p) const {
    PrecReal r(p);
    r.round_error(mpfr_set(r.mid_.get(), mid_.get(), MPFR_RNDN));
    mpfr_add(r.rad_.get(), r.rad_.get(), rad_.get(), MPFR_RNDU);
    return r;
}

PrecReal PrecReal::operator-() const {
    PrecReal r(*this);
    mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
    return r;
}

PrecReal& PrecReal::operator+=(const PrecReal& o) {
    long bits = max_bits(*this, o);
    if (bits > precision().bits) mpfr_prec_round(mid_.get(), bits, MPFR_RNDN);
    int t = mpfr_add(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    round_error(t);
    return *this;
}

PrecReal& PrecReal::operator-=(const PrecReal& o) {
    long bits = max_bits(*this, o);
    if (bits > precision().bits) mpfr_prec_round(mid_.get(), bits, MPFR_RNDN);
    int t = mpfr_sub(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    round_error(t);
    return *this;
}

PrecReal& PrecReal::operator*=(const PrecReal& o) {
    long bits = max_bits(*this, o);
    Mpfr a = abs_mid_up();
    Mpfr b = o.abs_mid_up();
    Mpfr r(kRadBits), tmp(kRadBits);
    mpfr_mul(r.get(), a.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), b.get(), rad_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), tmp.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), tmp.get(), MPFR_RNDU);
    Mpfr m(bits);
    int t = mpfr_mul(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    mid_ = std::move(m);
    rad_ = std::move(r);
    round_error(t);
    return *this;
}

PrecReal& PrecReal::operator/=(const PrecReal& o) {
    long bits = max_bits(*this, o);
    Mpfr b_lo(kRadBits), den(kRadBits);
    mpfr_abs(b_lo.get(), o.mid_.get(), MPFR_RNDD);
    mpfr_sub(den.get(), b_lo.get(), o.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(den.get()) <= 0) throw std::domain_error("division by a ball containing zero");
    mpfr_mul(den.get(), den.get(), b_lo.get(), MPFR_RNDD);
    Mpfr a = abs_mid_up();
    Mpfr b = o.abs_mid_up();
    Mpfr num(kRadBits), tmp(kRadBits);
    mpfr_mul(num.get(), a.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), b.get(), rad_.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), tmp.get(), MPFR_RNDU);
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDU);
    Mpfr m(bits);
    int t = mpfr_div(m.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    mid_ = std::move(m);
    rad_ = std::move(num);
    round_error(t);
    return *this;
}

PrecReal operator*(PrecReal a, const mpq_class& q) { return a *= PrecReal(q, a.precision()); }
PrecReal operator+(PrecReal a, const mpq_class& q) { return a += PrecReal(q, a.precision()); }
PrecReal operator/(PrecReal a, const mpq_class& q) { return a /= PrecReal(q, a.precision()); }

PrecReal sqrt(const PrecReal& x) {
    Precision p = x.precision();
    Mpfr lo(p.bits);
    mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) < 0) throw std::domain_error("sqrt of a ball reaching below zero");
    PrecReal r(p);
    int t = mpfr_sqrt(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
    if (!x.exact()) {
        // |sqrt(a) - sqrt(m)| <= rad / (sqrt(lo) + sqrt(m))
        Mpfr den(kRadBits), s(kRadBits);
        mpfr_sqrt(den.get(), lo.get(), MPFR_RNDD);
        mpfr_sqrt(s.get(), x.mid_.get(), MPFR_RNDD);
        mpfr_add(den.get(), den.get(), s.get(), MPFR_RNDD);
        if (mpfr_sgn(den.get()) <= 0) throw std::domain_error("sqrt near zero");
        mpfr_div(r.rad_.get(), x.rad_.get(), den.get(), MPFR_RNDU);
    }
    r.round_error(t);
    return r;
}

PrecReal log(const PrecReal& x) {
    Precision p = x.precision();
    Mpfr lo(kRadBits);
    mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0) throw std::domain_error("log of a ball not strictly positive");
    PrecReal r(p);
    int t = mpfr_log(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
    mpfr_div(r.rad_.get(), x.rad_.get(), lo.get(), MPFR_RNDU);
    r.round_error(t);
    return r;
}

PrecReal exp(const PrecReal& x) {
    Precision p = x.precision();
    PrecReal r(p);
    int t = mpfr_exp(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
    if (!x.exact()) {
        Mpfr em(kRadBits), e1(kRadBits);
        mpfr_exp(em.get(), x.mid_.get(), MPFR_RNDU);
        mpfr_expm1(e1.get(), x.rad_.get(), MPFR_RNDU);
        mpfr_mul(r.rad_.get(), em.get(), e1.get(), MPFR_RNDU);
    }
    r.round_error(t);
    return r;
}

PrecReal sin(const PrecReal& x) {
    PrecReal r(x.precision());
    int t = mpfr_sin(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
    mpfr_set(r.rad_.get(), x.rad_.get(), MPFR_RNDU);
    r.round_error(t);
    return r;
}

PrecReal cos(const PrecReal& x) {
    PrecReal r(x.precision());
    int t = mpfr_cos(r.mid_.get(), x.mid_.get(), MPFR_RNDN);
    mpfr_set(r.rad_.get(), x.rad_.get(), MPFR_RNDU);
    r.round_error(t);
    return r;
}

PrecReal abs(const PrecReal& x) {
    PrecReal r(x);
    mpfr_abs(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
    return r;
}

PrecReal pow(const PrecReal& x, long n) {
    if (n < 0) return PrecReal(1, x.precision()) / pow(x, -n);
    PrecReal result(1, x.precision());
    PrecReal base(x);
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

PrecReal hull(const PrecReal& a, const PrecReal& b) {
    long bits = std::max(a.precision().bits, b.precision().bits);
    Mpfr lo(bits + 8), hi(bits + 8), t(bits + 8);
    mpfr_sub(lo.get(), a.mid(), a.rad(), MPFR_RNDD);
    mpfr_sub(t.get(), b.mid(), b.rad(), MPFR_RNDD);
    mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.mid(), a.rad(), MPFR_RNDU);
    mpfr_add(t.get(), b.mid(), b.rad(), MPFR_RNDU);
    mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    Mpfr m(bits + 8), w(bits + 8);
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
    // midpoint rounding can shift the centre by one ulp; cover it
    Mpfr ulp(64);
    mpfr_abs(ulp.get(), m.get(), MPFR_RNDU);
    mpfr_mul_2si(ulp.get(), ulp.get(), 2 - bits, MPFR_RNDU);
    mpfr_add(w.get(), w.get(), ulp.get(), MPFR_RNDU);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), m.get());
    PrecReal out(q, Precision{bits});
    out.inflate(w);
    return out;
}

}  // namespace g2t
