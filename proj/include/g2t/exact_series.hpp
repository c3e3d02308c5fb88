#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace g2t {

// Truncated power series with exact rational coefficients.
// Coefficients at index >= order() are unknown, never implicitly zero.
class ExactSeries {
public:
    explicit ExactSeries(std::size_t order = 1);
    explicit ExactSeries(std::vector<mpq_class> coeffs);
    ExactSeries(std::initializer_list<long> coeffs, std::size_t order);

    // 1/(1-x) to the given order.
    static ExactSeries geometric(std::size_t order);
    static ExactSeries from_integers(const std::vector<mpz_class>& v);

    std::size_t order() const { return c_.size(); }
    const mpq_class& operator[](std::size_t i) const { return c_.at(i); }
    mpq_class& operator[](std::size_t i) { return c_.at(i); }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    ExactSeries truncated(std::size_t order) const;
    bool integral() const;
    std::vector<mpz_class> integers() const;  // throws unless integral()

    // f / x^k; the first k coefficients must vanish.
    ExactSeries divided_by_x(std::size_t k = 1) const;
    // x^k f, keeping the order (top coefficients fall off).
    ExactSeries times_x(std::size_t k = 1) const;
    // 1/f, requires f(0) != 0.
    ExactSeries reciprocal() const;

    ExactSeries& operator+=(const ExactSeries& o);
    ExactSeries& operator-=(const ExactSeries& o);
    ExactSeries& operator*=(const mpq_class& s);

    friend ExactSeries operator+(ExactSeries a, const ExactSeries& b) { return a += b; }
    friend ExactSeries operator-(ExactSeries a, const ExactSeries& b) { return a -= b; }
    friend ExactSeries operator*(ExactSeries a, const mpq_class& s) { return a *= s; }
    friend bool operator==(const ExactSeries& a, const ExactSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<mpq_class> c_;
};

ExactSeries mul(const ExactSeries& f, const ExactSeries& g);
// Product truncated to `len` coefficients (len <= both orders).
ExactSeries mul_trunc(const ExactSeries& f, const ExactSeries& g, std::size_t len);
ExactSeries operator*(const ExactSeries& f, const ExactSeries& g);

// f(g(x)); g(0) must be 0.
ExactSeries compose(const ExactSeries& f, const ExactSeries& g);

// y with y = x A(y), returned to order N (y_0 .. y_{N-1}).
ExactSeries lagrange_invert(const ExactSeries& A, std::size_t N);

// A with A(x B(x)) = B(x), returned to order N.
ExactSeries recover_generator(const ExactSeries& B, std::size_t N);

// [x^n] (1-x)^k log(1-x) for n > k >= 0.
mpq_class log_one_minus_coeff(long k, long n);

// One coefficient per line: `index numerator/denominator`.
void write_series(std::ostream& out, const ExactSeries& s);
ExactSeries read_series(std::istream& in);

}  // namespace g2t
