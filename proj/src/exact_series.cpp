#include "g2t/exact_series.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace g2t {

namespace {

mpz_class denominator_lcm(const std::vector<mpq_class>& c, std::size_t len) {
    mpz_class l = 1;
    for (std::size_t i = 0; i < len; ++i)
        if (c[i].get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c[i].get_den_mpz_t());
    return l;
}

std::vector<mpz_class> scaled_numerators(const std::vector<mpq_class>& c, std::size_t len,
                                         const mpz_class& l) {
    std::vector<mpz_class> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (c[i] == 0) continue;
        if (l == 1) {
            out[i] = c[i].get_num();
        } else {
            mpz_class f = l / c[i].get_den();
            out[i] = c[i].get_num() * f;
        }
    }
    return out;
}

}  // namespace

ExactSeries::ExactSeries(std::size_t order) : c_(order) {
    if (order == 0) throw std::invalid_argument("series order must be at least 1");
}

ExactSeries::ExactSeries(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series order must be at least 1");
}

ExactSeries::ExactSeries(std::initializer_list<long> coeffs, std::size_t order) : c_(order) {
    if (order == 0) throw std::invalid_argument("series order must be at least 1");
    std::size_t i = 0;
    for (long v : coeffs) {
        if (i >= order) break;
        c_[i++] = v;
    }
}

ExactSeries ExactSeries::geometric(std::size_t order) {
    ExactSeries s(order);
    for (auto& c : s.c_) c = 1;
    return s;
}

ExactSeries ExactSeries::from_integers(const std::vector<mpz_class>& v) {
    std::vector<mpq_class> c(v.begin(), v.end());
    return ExactSeries(std::move(c));
}

ExactSeries ExactSeries::truncated(std::size_t order) const {
    if (order > c_.size()) throw std::out_of_range("cannot extend a truncated series");
    return ExactSeries(std::vector<mpq_class>(c_.begin(), c_.begin() + static_cast<long>(order)));
}

bool ExactSeries::integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& q) { return q.get_den() == 1; });
}

std::vector<mpz_class> ExactSeries::integers() const {
    std::vector<mpz_class> out;
    out.reserve(c_.size());
    for (const auto& q : c_) {
        if (q.get_den() != 1) throw std::domain_error("series has a non-integral coefficient");
        out.push_back(q.get_num());
    }
    return out;
}

ExactSeries ExactSeries::divided_by_x(std::size_t k) const {
    if (k >= c_.size()) throw std::out_of_range("shift exceeds order");
    for (std::size_t i = 0; i < k; ++i)
        if (c_[i] != 0) throw std::domain_error("series not divisible by x^k");
    return ExactSeries(std::vector<mpq_class>(c_.begin() + static_cast<long>(k), c_.end()));
}

ExactSeries ExactSeries::times_x(std::size_t k) const {
    ExactSeries r(c_.size());
    for (std::size_t i = k; i < c_.size(); ++i) r.c_[i] = c_[i - k];
    return r;
}

ExactSeries ExactSeries::reciprocal() const {
    if (c_[0] == 0) throw std::domain_error("reciprocal of a series with zero constant term");
    const std::size_t n = c_.size();
    ExactSeries r(n);
    mpq_class inv0 = 1 / c_[0];
    r.c_[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        mpq_class s = 0;
        for (std::size_t j = 1; j <= k; ++j)
            if (c_[j] != 0) s += c_[j] * r.c_[k - j];
        r.c_[k] = -s * inv0;
    }
    return r;
}

ExactSeries& ExactSeries::operator+=(const ExactSeries& o) {
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

ExactSeries& ExactSeries::operator-=(const ExactSeries& o) {
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

ExactSeries& ExactSeries::operator*=(const mpq_class& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

ExactSeries mul_trunc(const ExactSeries& f, const ExactSeries& g, std::size_t len) {
    if (len > f.order() || len > g.order() || len == 0)
        throw std::out_of_range("product length exceeds operand order");
    // Clear denominators once, convolve integers, restore.
    const mpz_class lf = denominator_lcm(f.coeffs(), len);
    const mpz_class lg = denominator_lcm(g.coeffs(), len);
    const auto F = scaled_numerators(f.coeffs(), len, lf);
    const auto G = scaled_numerators(g.coeffs(), len, lg);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < len; ++j)
        if (G[j] != 0) nz.push_back(j);
    std::vector<mpz_class> H(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (F[i] == 0) continue;
        for (std::size_t j : nz) {
            if (i + j >= len) break;
            mpz_addmul(H[i + j].get_mpz_t(), F[i].get_mpz_t(), G[j].get_mpz_t());
        }
    }
    const mpz_class d = lf * lg;
    std::vector<mpq_class> out(len);
    for (std::size_t k = 0; k < len; ++k) {
        if (d == 1) {
            out[k] = H[k];
        } else {
            out[k] = mpq_class(H[k], d);
            out[k].canonicalize();
        }
    }
    return ExactSeries(std::move(out));
}

ExactSeries mul(const ExactSeries& f, const ExactSeries& g) {
    return mul_trunc(f, g, std::min(f.order(), g.order()));
}

ExactSeries operator*(const ExactSeries& f, const ExactSeries& g) { return mul(f, g); }

ExactSeries compose(const ExactSeries& f, const ExactSeries& g) {
    if (g[0] != 0) throw std::domain_error("inner series must have zero constant term");
    const std::size_t n = std::min(f.order(), g.order());
    ExactSeries result(n);
    result[0] = f[0];
    ExactSeries power = g.truncated(n);
    for (std::size_t k = 1; k < n; ++k) {
        if (f[k] != 0)
            for (std::size_t i = k; i < n; ++i) result[i] += f[k] * power[i];
        if (k + 1 < n) power = mul_trunc(power, g, n);
    }
    return result;
}

ExactSeries lagrange_invert(const ExactSeries& A, std::size_t N) {
    if (A[0] != 1) throw std::domain_error("generator must have constant term 1");
    if (N < 2) throw std::out_of_range("inversion order must be at least 2");
    if (A.order() + 1 < N) throw std::out_of_range("generator order too small for requested inversion");
    ExactSeries y(N);
    y[1] = 1;
    if (N == 2) return y;
    const std::size_t len = N - 1;
    const ExactSeries a = A.truncated(len);
    ExactSeries power = a;  // A^i truncated to x^{N-2}
    for (std::size_t i = 2; i < N; ++i) {
        power = mul_trunc(power, a, len);
        y[i] = power[i - 1] / mpq_class(static_cast<long>(i));
    }
    return y;
}

ExactSeries recover_generator(const ExactSeries& B, std::size_t N) {
    if (B[0] != 1) throw std::domain_error("series must have constant term 1");
    if (N == 0 || N > B.order()) throw std::out_of_range("recovery order exceeds series order");
    ExactSeries A(N);
    A[0] = 1;
    // powers[k] = B^k truncated to N - k coefficients
    std::vector<ExactSeries> powers;
    powers.reserve(N);
    powers.emplace_back(1);
    if (N > 1) powers.push_back(B.truncated(N - 1));
    for (std::size_t k = 2; k < N; ++k) powers.push_back(mul_trunc(powers[k - 1], B, N - k));
    for (std::size_t n = 1; n < N; ++n) {
        mpq_class s = B[n];
        for (std::size_t k = 1; k < n; ++k)
            if (A[k] != 0) s -= A[k] * powers[k][n - k];
        A[n] = s;
    }
    return A;
}

mpq_class log_one_minus_coeff(long k, long n) {
    if (k < 0 || n <= k) throw std::domain_error("need n > k >= 0");
    mpz_class fact = 1, falling = 1;
    for (long j = 2; j <= k; ++j) fact *= j;
    for (long j = n - k; j <= n; ++j) falling *= j;
    mpq_class r(fact, falling);
    r.canonicalize();
    return (k % 2 == 0) ? mpq_class(-r) : r;
}

void write_series(std::ostream& out, const ExactSeries& s) {
    for (std::size_t i = 0; i < s.order(); ++i)
        out << i << ' ' << s[i].get_num() << '/' << s[i].get_den() << '\n';
}

ExactSeries read_series(std::istream& in) {
    std::vector<mpq_class> c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::size_t idx;
        std::string value;
        if (!(ls >> idx >> value) || idx != c.size())
            throw std::invalid_argument("bad series line " + std::to_string(lineno));
        mpq_class q;
        if (q.set_str(value, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad coefficient on line " + std::to_string(lineno));
        q.canonicalize();
        c.push_back(q);
    }
    return ExactSeries(std::move(c));
}

}  // namespace g2t
