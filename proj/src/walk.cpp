#include "g2t/walk.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <thread>

namespace g2t {

namespace {

// Run body(lo, hi) over [begin, end) split into contiguous chunks.
template <class F>
void parallel_rows(int begin, int end, int threads, F&& body) {
    const int n = end - begin;
    if (threads <= 1 || n < 64) {
        body(begin, end);
        return;
    }
    threads = std::min(threads, n / 16);
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
        int lo = begin + n * t / threads;
        int hi = begin + n * (t + 1) / threads;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
}

// Chamber coordinates (p, q) >= 1, start (1, 1). Seven hexagonal steps.
constexpr std::array<std::array<int, 2>, 7> kChamberSteps{{
    {0, 0}, {1, -1}, {-1, 1}, {0, 1}, {0, -1}, {-1, 2}, {1, -2}}};

template <class T>
class ChamberGrid {
public:
    explicit ChamberGrid(int side) : side_(side), v_(static_cast<std::size_t>(side * side)) {}
    T& at(int p, int q) { return v_[static_cast<std::size_t>(p * side_ + q)]; }
    const T& at(int p, int q) const { return v_[static_cast<std::size_t>(p * side_ + q)]; }

private:
    int side_;
    std::vector<T> v_;
};

struct ChamberWindow {
    int m;
    bool inside(int p, int q) const { return p >= 1 && q >= 1 && p + q <= 2 + m && 2 * p + q <= 3 + m; }
};

template <class T>
std::vector<T> chamber_sequence(std::size_t N, int threads, bool scaled) {
    const int n = static_cast<int>(N);
    const int side = n / 2 + 4;
    ChamberGrid<T> cur(side), nxt(side);
    cur.at(1, 1) = 1;
    std::vector<T> out;
    out.reserve(N + 1);
    out.push_back(cur.at(1, 1));
    for (int k = 0; k < n; ++k) {
        const ChamberWindow old_w{std::min(k, n - k)};
        const ChamberWindow new_w{std::min(k + 1, n - k - 1)};
        auto read = [&](int p, int q) -> T {
            if (p <= 0 || q == 0) return T(0);
            if (q == -1) {
                // reflection across the q = 0 wall
                if (p - 1 <= 0 || !old_w.inside(p - 1, 1)) return T(0);
                return T(-cur.at(p - 1, 1));
            }
            return old_w.inside(p, q) ? cur.at(p, q) : T(0);
        };
        const int pmax = 2 + new_w.m;
        parallel_rows(1, pmax + 1, threads, [&](int lo, int hi) {
            T acc;
            for (int p = lo; p < hi; ++p) {
                for (int q = 1; q <= 2 + new_w.m - p; ++q) {
                    if (!new_w.inside(p, q)) break;
                    acc = 0;
                    for (const auto& s : kChamberSteps) acc += read(p - s[0], q - s[1]);
                    if constexpr (std::is_same_v<T, double>) {
                        if (scaled) acc /= 7.0;
                        // keep far-edge mass out of the subnormal range
                        if (std::fabs(acc) < 1e-280) acc = 0.0;
                    }
                    nxt.at(p, q) = acc;
                }
            }
        });
        std::swap(cur, nxt);
        out.push_back(new_w.inside(1, 1) ? cur.at(1, 1) : T(0));
    }
    return out;
}

}  // namespace

const std::array<Monomial, 12>& weight_monomials() {
    static const std::array<Monomial, 12> w{{
        {0, 0, 1}, {-1, 0, -1}, {-3, -1, 1}, {-4, -2, -1}, {-5, -4, 1}, {-5, -5, -1},
        {-4, -6, 1}, {-3, -6, -1}, {-1, -5, 1}, {0, -4, -1}, {1, -2, 1}, {1, -1, -1}}};
    return w;
}

const std::array<Monomial, 7>& step_monomials() {
    static const std::array<Monomial, 7> m{{
        {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {2, 2, 1}}};
    return m;
}

LaurentGrid::LaurentGrid(int lx, int ly, int x_extent, int y_extent)
    : lo_x(lx), lo_y(ly), nx(x_extent), ny(y_extent),
      data(static_cast<std::size_t>(x_extent) * static_cast<std::size_t>(y_extent)) {}

mpz_class LaurentGrid::coeff(int i, int j) const {
    if (i < lo_x || j < lo_y || i >= lo_x + nx || j >= lo_y + ny) return 0;
    return data[static_cast<std::size_t>((i - lo_x) * ny + (j - lo_y))];
}

LaurentGrid weight_grid() {
    LaurentGrid g(-5, -6, 7, 7);
    for (const auto& m : weight_monomials()) g.at(m.x, m.y) += m.coeff;
    return g;
}

LaurentGrid times_step(const LaurentGrid& g) {
    LaurentGrid r(g.lo_x, g.lo_y, g.nx + 2, g.ny + 2);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const mpz_class& c = g.data[static_cast<std::size_t>(i * g.ny + j)];
            if (c == 0) continue;
            for (const auto& s : step_monomials()) r.at(g.lo_x + i + s.x, g.lo_y + j + s.y) += c;
        }
    return r;
}

std::vector<mpz_class> bn_exact_sequence(std::size_t N, const WalkOptions& opt) {
    if (N > opt.exact_limit)
        throw ExactLimitError("n = " + std::to_string(N) + " exceeds the exact limit " +
                              std::to_string(opt.exact_limit) + "; use bn_scaled");
    const int n = static_cast<int>(N);
    // Absolute exponent window; a coefficient at exponent e after k steps can
    // only reach the diagonal read at step j <= N if 2k - N <= e <= N.
    const int lo_x = -5, lo_y = -6;
    const int nx = n + 7, ny = n + 7;
    std::vector<mpz_class> cur(static_cast<std::size_t>(nx * ny)), nxt(cur.size());
    auto idx = [&](int i, int j) { return static_cast<std::size_t>((i - lo_x) * ny + (j - lo_y)); };
    for (const auto& m : weight_monomials()) cur[idx(m.x, m.y)] = m.coeff;
    int xl = -5, xh = std::min(1, n), yl = -6, yh = std::min(0, n);
    std::vector<mpz_class> out;
    out.reserve(N + 1);
    auto diag = [&](int k) -> mpz_class {
        return (k >= xl && k <= xh && k >= yl && k <= yh) ? cur[idx(k, k)] : mpz_class(0);
    };
    out.push_back(diag(0));
    for (int k = 0; k < n; ++k) {
        const int nxl = std::max(-5, 2 * (k + 1) - n), nxh = std::min(1 + 2 * (k + 1), n);
        const int nyl = std::max(-6, 2 * (k + 1) - n), nyh = std::min(2 * (k + 1), n);
        parallel_rows(nxl, nxh + 1, opt.threads, [&](int lo, int hi) {
            for (int i = lo; i < hi; ++i)
                for (int j = nyl; j <= nyh; ++j) {
                    mpz_class& acc = nxt[idx(i, j)];
                    acc = 0;
                    for (const auto& s : step_monomials()) {
                        const int a = i - s.x, b = j - s.y;
                        if (a < xl || a > xh || b < yl || b > yh) continue;
                        acc += cur[idx(a, b)];
                    }
                }
        });
        std::swap(cur, nxt);
        xl = nxl; xh = nxh; yl = nyl; yh = nyh;
        out.push_back(diag(k + 1));
    }
    return out;
}

mpz_class bn_exact(std::size_t n, const WalkOptions& opt) {
    return bn_exact_sequence(n, opt).back();
}

std::vector<mpz_class> chamber_sequence_exact(std::size_t N, int threads) {
    return chamber_sequence<mpz_class>(N, threads, false);
}

std::vector<double> chamber_sequence_scaled(std::size_t N, int threads) {
    return chamber_sequence<double>(N, threads, true);
}

double bn_scaled(std::size_t n, int threads) { return chamber_sequence_scaled(n, threads).back(); }

std::vector<double> bn_scaled_sequence(std::size_t N, int threads) {
    return chamber_sequence_scaled(N, threads);
}

namespace {

SaddleResult trapezoid(std::size_t n, std::size_t G) {
    using cd = std::complex<double>;
    const double h = 2.0 * M_PI / static_cast<double>(G);
    long double re = 0, im = 0, cre = 0, cim = 0;
    auto neumaier = [](long double& sum, long double& comp, long double v) {
        long double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v)) comp += (sum - t) + v;
        else comp += (v - t) + sum;
        sum = t;
    };
    for (std::size_t a = 0; a < G; ++a) {
        const double u = -M_PI + h * static_cast<double>(a);
        const cd x = std::polar(1.0, u);
        for (std::size_t b = 0; b < G; ++b) {
            const double v = -M_PI + h * static_cast<double>(b);
            const cd y = std::polar(1.0, v);
            cd w = 0;
            for (const auto& m : weight_monomials())
                w += static_cast<double>(m.coeff) * std::polar(1.0, m.x * u + m.y * v);
            cd step = 0;
            for (const auto& m : step_monomials()) step += std::polar(1.0, m.x * u + m.y * v);
            step /= 7.0 * x * y;
            cd pw = 1, base = step;
            for (std::size_t e = n; e > 0; e >>= 1) {
                if (e & 1) pw *= base;
                base *= base;
            }
            const cd f = w * pw;
            neumaier(re, cre, f.real());
            neumaier(im, cim, f.imag());
        }
    }
    const long double norm = static_cast<long double>(G) * static_cast<long double>(G);
    return {static_cast<double>((re + cre) / norm), static_cast<double>((im + cim) / norm), G};
}

}  // namespace

SaddleResult saddle_quadrature(std::size_t n, std::size_t grid_points, std::size_t max_grid) {
    if (n < 2) throw std::domain_error("saddle quadrature needs n >= 2");
    if (grid_points < 64) throw std::domain_error("grid_points must be at least 64");
    SaddleResult prev = trapezoid(n, grid_points);
    for (std::size_t g = grid_points * 2; g <= max_grid; g *= 2) {
        SaddleResult next = trapezoid(n, g);
        if (std::fabs(next.value - prev.value) <= 1e-8 * std::fabs(next.value)) {
            if (std::fabs(next.imag) > 1e-10 * std::fabs(next.value))
                throw RefinementError("imaginary part of the quadrature is not negligible");
            return next;
        }
        prev = next;
    }
    throw RefinementError("quadrature did not converge up to grid " + std::to_string(max_grid));
}

}  // namespace g2t
