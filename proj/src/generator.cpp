#include "g2t/generator.hpp"

#include "g2t/closed_form.hpp"
#include "g2t/walk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace g2t {

namespace {

using Poly = std::vector<mpq_class>;  // ascending powers

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
    Poly d(std::max<std::size_t>(p.size(), 2) - 1, 0);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    trim(d);
    return d;
}

bool is_zero(const Poly& p) { return p.size() == 1 && p[0] == 0; }

// Returns (quotient, remainder).
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {Poly{0}, a};
    Poly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const mpq_class c = a[i] / b[db];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    a.resize(db == 0 ? 1 : db);
    trim(a);
    trim(q);
    return {q, a};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!is_zero(b)) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

mpq_class eval(const Poly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

PrecReal eval(const Poly& p, const PrecReal& x) {
    PrecReal acc(0L, x.precision());
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain{p, derivative(p)};
    while (!is_zero(chain.back()) && chain.back().size() > 1) {
        Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (is_zero(r)) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(const std::vector<Poly>& chain, const mpq_class& x) {
    int changes = 0, last = 0;
    for (const auto& p : chain) {
        const int s = sgn(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

void check_generator_coeffs(const ExactSeries& a, const std::string& who) {
    if (a[0] != 1) throw InvariantViolation(who + ": constant coefficient must be 1");
    for (std::size_t i = 1; i < a.order(); ++i)
        if (a[i] < 0) throw InvariantViolation(who + ": negative coefficient at index " + std::to_string(i));
}

// sum_{n >= N} n^-p <= (N - 1)^(1-p) / (p - 1)
double zeta_tail(double p, std::size_t N) {
    const double base = static_cast<double>(std::max<std::size_t>(N, 2) - 1);
    return std::pow(base, 1.0 - p) / (p - 1.0);
}

}  // namespace

ExactSeries Generator::tree_series(std::size_t n) const { return lagrange_invert(coefficients(n), n); }

std::optional<double> Generator::tree_tail_bound(double, std::size_t) const { return std::nullopt; }

PrecReal Generator::h(const PrecReal& z) const {
    const Jet j = jet(z);
    return j.value - z * j.d1;
}

RationalGenerator::RationalGenerator(std::vector<mpq_class> numerator, std::vector<mpq_class> denominator,
                                     std::size_t order, std::string name)
    : num_(std::move(numerator)), den_(std::move(denominator)), order_(order), name_(std::move(name)) {
    if (num_.empty() || den_.empty()) throw SpecParseError("empty numerator or denominator");
    trim(num_);
    trim(den_);
    if (is_zero(den_)) throw SpecParseError("zero denominator");
    if (den_[0] == 0) throw InvariantViolation("denominator vanishes at 0");
    const Poly g = poly_gcd(num_, den_);
    if (g.size() > 1) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    const mpq_class scale = den_[0];
    for (auto& c : num_) c /= scale;
    for (auto& c : den_) c /= scale;
    if (order_ < 2) throw SpecParseError("order must be at least 2");
    check_generator_coeffs(coefficients(order_), "generator");
}

std::string RationalGenerator::kind() const {
    return den_.size() == 1 ? "coefficient-list" : "rational-function";
}

ExactSeries RationalGenerator::coefficients(std::size_t n) const {
    std::vector<mpq_class> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class v = i < num_.size() ? num_[i] : mpq_class(0);
        for (std::size_t k = 1; k <= i && k < den_.size(); ++k) v -= den_[k] * c[i - k];
        c[i] = v;  // den_[0] == 1
    }
    return ExactSeries(std::move(c));
}

std::optional<PrecReal> RationalGenerator::radius(Precision p) const {
    if (den_.size() == 1) return std::nullopt;
    mpq_class bound = 0;
    for (std::size_t i = 0; i + 1 < den_.size(); ++i) bound = std::max(bound, mpq_class(abs(den_[i] / den_.back())));
    bound += 1;
    const auto chain = sturm_chain(den_);
    const int at0 = sign_changes(chain, 0);
    if (at0 - sign_changes(chain, bound) == 0)
        throw InvariantViolation("denominator has no positive root; coefficients cannot stay nonnegative");
    mpq_class lo = 0, hi = bound;
    mpq_class width(1);
    mpz_mul_2exp(width.get_den_mpz_t(), width.get_den_mpz_t(), static_cast<mp_bitcnt_t>(p.bits + 8));
    while (hi - lo > width) {
        const mpq_class mid = (lo + hi) / 2;
        if (eval(den_, mid) == 0) return PrecReal(mid, p);
        if (at0 - sign_changes(chain, mid) > 0) hi = mid;
        else lo = mid;
    }
    PrecReal r(mpq_class((lo + hi) / 2), p);
    Mpfr half(64);
    const mpq_class hw = (hi - lo) / 2;
    mpfr_set_q(half.get(), hw.get_mpq_t(), MPFR_RNDU);
    r.inflate(half);
    return r;
}

Jet RationalGenerator::jet(const PrecReal& z) const {
    const PrecReal n0 = eval(num_, z), d0 = eval(den_, z);
    const Poly dn = derivative(num_), dd = derivative(den_);
    const PrecReal n1 = eval(dn, z), d1 = eval(dd, z);
    const PrecReal n2 = eval(derivative(dn), z), d2 = eval(derivative(dd), z);
    if (d0.contains_zero()) throw std::domain_error("generator evaluated at a pole");
    const PrecReal inv = PrecReal(1, z.precision()) / d0;
    const PrecReal value = n0 * inv;
    const PrecReal first = (n1 - value * d1) * inv;
    const PrecReal second = (n2 - value * d2 - first * d1 * mpq_class(2)) * inv;
    return {value, first, second};
}

CatalanGenerator::CatalanGenerator(std::size_t order)
    : RationalGenerator({mpq_class(1)}, {mpq_class(1), mpq_class(-1)}, order, "catalan") {}

ExactSeries CatalanGenerator::tree_series(std::size_t n) const {
    // y_k = binom(2k-2, k-1) / k
    std::vector<mpq_class> y(n, 0);
    mpz_class c = 1;  // Catalan number C_{k-1}
    for (std::size_t k = 1; k < n; ++k) {
        y[k] = c;
        c = c * static_cast<unsigned long>(2 * (2 * k - 1)) / static_cast<unsigned long>(k + 1);
    }
    return ExactSeries(std::move(y));
}

std::vector<mpz_class> sqrt_power_coeffs(std::size_t n) {
    std::vector<mpz_class> c(n);
    if (n == 0) return c;
    c[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        // ratio -4 (5/2 - k + 1) / k = 2 (2k - 7) / k
        mpz_class t = c[k - 1] * 2 * (2 * static_cast<long>(k) - 7);
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
        c[k] = t;
    }
    return c;
}

ExactSeries Example2Generator::coefficients(std::size_t n) const {
    const auto s = sqrt_power_coeffs(n);
    std::vector<mpq_class> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = -s[i];
    const long quad[3] = {2, -16, 32};
    for (std::size_t i = 0; i < 3 && i < n; ++i) a[i] += quad[i];
    if (n > 1) a[1] += 6;
    return ExactSeries(std::move(a));
}

std::optional<PrecReal> Example2Generator::radius(Precision p) const { return PrecReal(mpq_class(1, 4), p); }

Jet Example2Generator::jet(const PrecReal& z) const {
    const Precision p = z.precision();
    const PrecReal t = PrecReal(1, p) - z * mpq_class(4);
    const PrecReal s = (t.exact() && t.contains_zero()) ? PrecReal(0L, p) : sqrt(t);
    const PrecReal s3 = s * s * s;
    return {z * mpq_class(6) + t * t * mpq_class(2) - s3 * s * s, PrecReal(6, p) - t * mpq_class(16) + s3 * mpq_class(10),
            PrecReal(64, p) - s * mpq_class(60)};
}

ExactSeries Example2Generator::tree_series(std::size_t n) const {
    // Online: y_k = [x^(k-1)] A(y), with u = 1 - 4y and P = u^(5/2) from
    // 2m P_m = sum_{j=1}^m (7j - 2m) u_j P_{m-j}.
    std::vector<mpz_class> y(n, 0), u(n, 0), P(n, 0);
    if (n == 0) return ExactSeries(1);
    u[0] = 1;
    P[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        const std::size_t m = k - 1;
        if (m > 0) {
            mpz_class acc = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (u[j] == 0 || P[m - j] == 0) continue;
                const long w = 7 * static_cast<long>(j) - 2 * static_cast<long>(m);
                mpz_class t = u[j] * P[m - j];
                if (w >= 0) mpz_addmul_ui(acc.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(w));
                else mpz_submul_ui(acc.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(-w));
            }
            mpz_divexact_ui(P[m].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(2 * m));
        }
        mpz_class usq = 0;
        for (std::size_t j = 0; j <= m; ++j) mpz_addmul(usq.get_mpz_t(), u[j].get_mpz_t(), u[m - j].get_mpz_t());
        y[k] = 2 * usq - P[m];
        if (m > 0) y[k] += 6 * y[m];
        u[k] = -4 * y[k];
    }
    return ExactSeries::from_integers(y);
}

std::optional<double> Example2Generator::tree_tail_bound(double r, std::size_t N) const {
    if (r > 1.0 / 6.0) return std::nullopt;
    // y_n 6^-n <= 2 K n^-3/2 with K = sqrt(3) / (16 sqrt(pi))
    const double K = std::sqrt(3.0) / (16.0 * std::sqrt(M_PI));
    return 2.0 * K * zeta_tail(1.5, N);
}

G2Generator::G2Generator(std::size_t order, std::size_t exact_limit) : exact_limit_(exact_limit) {
    WalkOptions opt;
    opt.exact_limit = exact_limit;
    b_ = ExactSeries::from_integers(bn_exact_sequence(order, opt));
    a_ = recover_generator(b_, order + 1);
}

ExactSeries G2Generator::coefficients(std::size_t n) const {
    if (n <= a_.order()) return a_.truncated(n);
    WalkOptions opt;
    opt.exact_limit = exact_limit_;
    const auto b = ExactSeries::from_integers(bn_exact_sequence(n - 1, opt));
    return recover_generator(b, n);
}

std::optional<PrecReal> G2Generator::radius(Precision p) const { return PrecReal(1, p) / rho_closed(p); }

Jet G2Generator::jet(const PrecReal& z) const {
    const Precision p = z.precision();
    PrecReal v(0L, p), d1(0L, p), d2(0L, p);
    for (std::size_t n = a_.order(); n-- > 0;) {
        v = v * z + a_[n];
        if (n >= 1) d1 = d1 * z + a_[n] * mpq_class(static_cast<long>(n));
        if (n >= 2) d2 = d2 * z + a_[n] * mpq_class(static_cast<long>(n * (n - 1)));
    }
    // a_n z^n <= 2 M n^-7 for z <= 1/rho and n beyond the exact range
    const std::size_t N = a_.order();
    const double M2 = 2.0 * 1721.0, rho = 6.8212;
    v.inflate(M2 * zeta_tail(7, N));
    d1.inflate(M2 * rho * zeta_tail(6, N));
    d2.inflate(M2 * rho * rho * zeta_tail(5, N));
    return {v, d1, d2};
}

ExactSeries G2Generator::tree_series(std::size_t n) const {
    if (n == 0) return ExactSeries(1);
    ExactSeries b = b_;
    if (n - 1 > b_.order()) {
        WalkOptions opt;
        opt.exact_limit = exact_limit_;
        b = ExactSeries::from_integers(bn_exact_sequence(n - 2, opt));
    }
    std::vector<mpq_class> y(n, 0);
    for (std::size_t k = 1; k < n; ++k) y[k] = b[k - 1];
    return ExactSeries(std::move(y));
}

std::optional<double> G2Generator::tree_tail_bound(double r, std::size_t N) const {
    if (r > 1.0 / 7.0 || N < 2) return std::nullopt;
    // y_n 7^-n = b_{n-1} 7^-n <= (2K / 7) (n-1)^-7
    return 2.0 * 2627.57 / 7.0 * zeta_tail(7, N - 1);
}

namespace {

std::vector<mpq_class> parse_values(const std::string& text, const std::string& key) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<mpq_class> out;
    std::string tok;
    while (in >> tok) {
        mpq_class q;
        try {
            if (tok.find('.') != std::string::npos) throw std::invalid_argument("decimal");
            q = mpq_class(tok);
        } catch (const std::invalid_argument&) {
            throw SpecParseError("bad value '" + tok + "' in " + key);
        }
        if (q.get_den() == 0) throw SpecParseError("zero denominator in " + key);
        q.canonicalize();
        out.push_back(q);
    }
    if (out.empty()) throw SpecParseError(key + " has no values");
    return out;
}

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::unique_ptr<Generator> parse_generator_spec(std::istream& in, std::size_t exact_limit) {
    std::map<std::string, std::string> fields;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        const auto colon = t.find(':');
        if (colon == std::string::npos) throw SpecParseError("line " + std::to_string(lineno) + ": expected key: value");
        const std::string key = strip(t.substr(0, colon));
        if (fields.count(key)) throw SpecParseError("duplicate key " + key);
        fields[key] = strip(t.substr(colon + 1));
    }
    static const char* known[] = {"kind", "coefficients", "numerator", "denominator", "name", "order"};
    for (const auto& [k, v] : fields)
        if (std::find(std::begin(known), std::end(known), k) == std::end(known)) throw SpecParseError("unknown key " + k);
    if (!fields.count("kind")) throw SpecParseError("missing kind");
    const std::string kind = fields["kind"];
    std::size_t order = 0;
    if (fields.count("order")) {
        try {
            std::size_t used = 0;
            const long v = std::stol(fields["order"], &used);
            if (used != fields["order"].size() || v < 2) throw std::invalid_argument("order");
            order = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw SpecParseError("order must be an integer >= 2");
        }
    }
    const std::string name = fields.count("name") ? fields["name"] : "";
    auto need = [&](const char* key) {
        if (!fields.count(key)) throw SpecParseError(kind + " needs " + key);
        return parse_values(fields[key], key);
    };
    if (kind == "coefficient-list") {
        auto c = need("coefficients");
        const std::size_t ord = order ? order : std::max<std::size_t>(c.size(), 200);
        return std::make_unique<RationalGenerator>(std::move(c), std::vector<mpq_class>{1}, ord, name);
    }
    if (kind == "rational-function") {
        return std::make_unique<RationalGenerator>(need("numerator"), need("denominator"), order ? order : 200, name);
    }
    if (kind == "closed-form") {
        if (name == "catalan") return std::make_unique<CatalanGenerator>(order ? order : 200);
        if (name == "example2") return std::make_unique<Example2Generator>(order ? order : 200);
        if (name == "g2") {
            if ((order ? order : 300) > exact_limit) throw SpecParseError("g2 order exceeds the exact limit");
            return std::make_unique<G2Generator>(order ? order : 300, exact_limit);
        }
        throw SpecParseError("unknown closed form '" + name + "' (catalan, example2, g2)");
    }
    throw SpecParseError("unknown kind '" + kind + "'");
}

std::unique_ptr<Generator> load_generator_spec(const std::string& path, std::size_t exact_limit) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open " + path);
    return parse_generator_spec(in, exact_limit);
}

}  // namespace g2t
