#pragma once

#include "g2t/exact_series.hpp"
#include "g2t/prec_real.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2t {

class SpecParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input breaks a hypothesis of the analysis (sign, constant term, monotonicity).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A(z), A'(z), A''(z) as balls.
struct Jet {
    PrecReal value;
    PrecReal d1;
    PrecReal d2;
};

// Degree-weight generator A(x) of a simply generated tree family.
class Generator {
public:
    virtual ~Generator() = default;

    virtual std::string kind() const = 0;
    virtual std::string name() const = 0;
    // Number of exact coefficients the analysis uses by default.
    virtual std::size_t order() const = 0;
    virtual ExactSeries coefficients(std::size_t n) const = 0;
    // Radius of convergence; nullopt for entire A.
    virtual std::optional<PrecReal> radius(Precision p) const = 0;
    // Whether jet() may be called at z = radius.
    virtual bool evaluable_at_radius() const { return false; }
    // Valid for z in [0, R), or [0, R] when evaluable_at_radius().
    virtual Jet jet(const PrecReal& z) const = 0;

    // y = x A(y) to the given order.
    virtual ExactSeries tree_series(std::size_t n) const;
    // Upper bound on sum_{n >= N} y_n r^n, if the generator declares one.
    virtual std::optional<double> tree_tail_bound(double r, std::size_t N) const;

    // h(z) = A(z) - z A'(z)
    PrecReal h(const PrecReal& z) const;
};

// Rational function N(x)/D(x) with exact coefficients; D = 1 gives a polynomial.
class RationalGenerator : public Generator {
public:
    RationalGenerator(std::vector<mpq_class> numerator, std::vector<mpq_class> denominator,
                      std::size_t order = 200, std::string name = "");

    std::string kind() const override;
    std::string name() const override { return name_; }
    std::size_t order() const override { return order_; }
    ExactSeries coefficients(std::size_t n) const override;
    std::optional<PrecReal> radius(Precision p) const override;
    Jet jet(const PrecReal& z) const override;

    const std::vector<mpq_class>& numerator() const { return num_; }
    const std::vector<mpq_class>& denominator() const { return den_; }

private:
    std::vector<mpq_class> num_;
    std::vector<mpq_class> den_;
    std::size_t order_;
    std::string name_;
};

// 1/(1-x); trees counted by the shifted Catalan numbers.
class CatalanGenerator : public RationalGenerator {
public:
    explicit CatalanGenerator(std::size_t order = 200);
    std::string kind() const override { return "closed-form"; }
    ExactSeries tree_series(std::size_t n) const override;
};

// 6x + 2(1-4x)^2 - (1-4x)^(5/2), radius 1/4, with h vanishing at the radius.
class Example2Generator : public Generator {
public:
    explicit Example2Generator(std::size_t order = 200) : order_(order) {}
    std::string kind() const override { return "closed-form"; }
    std::string name() const override { return "example2"; }
    std::size_t order() const override { return order_; }
    ExactSeries coefficients(std::size_t n) const override;
    std::optional<PrecReal> radius(Precision p) const override;
    bool evaluable_at_radius() const override { return true; }
    Jet jet(const PrecReal& z) const override;
    ExactSeries tree_series(std::size_t n) const override;
    std::optional<double> tree_tail_bound(double r, std::size_t N) const override;

private:
    std::size_t order_;
};

// Triangulation generator recovered from the G2 invariant dimensions, radius 1/rho.
// Beyond the exact coefficients the tail follows a_n rho^-n <= 2 M n^-7.
class G2Generator : public Generator {
public:
    explicit G2Generator(std::size_t order = 300, std::size_t exact_limit = 500);
    std::string kind() const override { return "closed-form"; }
    std::string name() const override { return "g2"; }
    std::size_t order() const override { return a_.order(); }
    ExactSeries coefficients(std::size_t n) const override;
    std::optional<PrecReal> radius(Precision p) const override;
    bool evaluable_at_radius() const override { return true; }
    Jet jet(const PrecReal& z) const override;
    ExactSeries tree_series(std::size_t n) const override;
    std::optional<double> tree_tail_bound(double r, std::size_t N) const override;

    const ExactSeries& invariant_series() const { return b_; }

private:
    ExactSeries b_;
    ExactSeries a_;
    std::size_t exact_limit_;
};

// Text format:
//   kind: coefficient-list | rational-function | closed-form
//   coefficients: 1 0 1 ...            (coefficient-list)
//   numerator: ... / denominator: ...  (rational-function, ascending powers)
//   name: catalan | example2 | g2      (closed-form; optional label otherwise)
//   order: N                           (optional)
// Blank lines and lines starting with '#' are ignored. Values are integers or p/q.
std::unique_ptr<Generator> parse_generator_spec(std::istream& in, std::size_t exact_limit = 500);
std::unique_ptr<Generator> load_generator_spec(const std::string& path, std::size_t exact_limit = 500);

// Coefficients of (1 - 4x)^(5/2), exact integers.
std::vector<mpz_class> sqrt_power_coeffs(std::size_t n);

}  // namespace g2t
