#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace g2t {

// Working precision in bits. Built from decimal digits plus guard bits.
struct Precision {
    long bits = 240;

    static Precision digits(int d, int guard_bits = 32);
    int decimal_digits() const;
    Precision widened(long extra) const { return Precision{bits + extra}; }
    friend bool operator==(Precision, Precision) = default;
};

// Owning wrapper for an mpfr_t.
class Mpfr {
public:
    explicit Mpfr(long bits);
    Mpfr(const Mpfr& other);
    Mpfr(Mpfr&& other) noexcept;
    Mpfr& operator=(const Mpfr& other);
    Mpfr& operator=(Mpfr&& other) noexcept;
    ~Mpfr();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

private:
    mpfr_t value_;
};

// Real ball: the true value lies in [mid - rad, mid + rad].
// Midpoints round to nearest, radii are 64-bit and always rounded up.
class PrecReal {
public:
    explicit PrecReal(Precision p = Precision{});
    PrecReal(long v, Precision p);
    PrecReal(const mpz_class& v, Precision p);
    PrecReal(const mpq_class& v, Precision p);

    static PrecReal pi(Precision p);
    static PrecReal euler_gamma(Precision p);
    static PrecReal log2(Precision p);

    Precision precision() const { return Precision{static_cast<long>(mpfr_get_prec(mid_.get()))}; }
    mpfr_srcptr mid() const { return mid_.get(); }
    mpfr_srcptr rad() const { return rad_.get(); }

    double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
    double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }
    bool exact() const { return mpfr_zero_p(rad_.get()) != 0; }
    bool finite() const;

    // Scientific notation of the midpoint with `sig` significant digits.
    std::string mid_string(int sig) const;
    // Upper bound of the radius, three significant digits.
    std::string rad_string() const;

    bool contains(const mpq_class& q) const;
    bool contains_zero() const;
    bool overlaps(const PrecReal& other) const;
    bool positive() const;  // whole ball > 0
    bool negative() const;  // whole ball < 0
    // Ball lies inside (lo, hi).
    bool within(double lo, double hi) const;
    // Radius is below t / 10, the threshold for asserting comparisons at tolerance t.
    bool certifies(double t) const;

    // Widen the radius by a nonnegative error term.
    PrecReal& inflate(const Mpfr& err);
    PrecReal& inflate(double err);
    PrecReal with_precision(Precision p) const;

    PrecReal operator-() const;
    PrecReal& operator+=(const PrecReal& o);
    PrecReal& operator-=(const PrecReal& o);
    PrecReal& operator*=(const PrecReal& o);
    PrecReal& operator/=(const PrecReal& o);

    friend PrecReal operator+(PrecReal a, const PrecReal& b) { return a += b; }
    friend PrecReal operator-(PrecReal a, const PrecReal& b) { return a -= b; }
    friend PrecReal operator*(PrecReal a, const PrecReal& b) { return a *= b; }
    friend PrecReal operator/(PrecReal a, const PrecReal& b) { return a /= b; }

    friend PrecReal operator*(PrecReal a, const mpq_class& q);
    friend PrecReal operator*(const mpq_class& q, PrecReal a) { return std::move(a) * q; }
    friend PrecReal operator+(PrecReal a, const mpq_class& q);
    friend PrecReal operator+(const mpq_class& q, PrecReal a) { return std::move(a) + q; }
    friend PrecReal operator-(PrecReal a, const mpq_class& q) { return std::move(a) + mpq_class(-q); }
    friend PrecReal operator-(const mpq_class& q, const PrecReal& a) { return -a + q; }
    friend PrecReal operator/(PrecReal a, const mpq_class& q);

    friend PrecReal sqrt(const PrecReal& x);
    friend PrecReal log(const PrecReal& x);
    friend PrecReal exp(const PrecReal& x);
    friend PrecReal sin(const PrecReal& x);
    friend PrecReal cos(const PrecReal& x);
    friend PrecReal abs(const PrecReal& x);
    friend PrecReal pow(const PrecReal& x, long n);

private:
    void round_error(int ternary);
    // |mid| rounded up to radius precision.
    Mpfr abs_mid_up() const;

    Mpfr mid_;
    Mpfr rad_;
};

PrecReal sqrt(const PrecReal& x);
PrecReal log(const PrecReal& x);
PrecReal exp(const PrecReal& x);
PrecReal sin(const PrecReal& x);
PrecReal cos(const PrecReal& x);
PrecReal abs(const PrecReal& x);
PrecReal pow(const PrecReal& x, long n);

// Common hull of two balls at the wider precision.
PrecReal hull(const PrecReal& a, const PrecReal& b);

}  // namespace g2t
