#pragma once

#include "g2t/prec_real.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace g2t {

// Exact rational q standing for the real number q * sqrt(3) / pi.
struct SymRational {
    mpq_class q;

    PrecReal value(Precision p) const;
    SymRational& operator+=(const SymRational& o) { q += o.q; return *this; }
    SymRational& operator-=(const SymRational& o) { q -= o.q; return *this; }
    friend SymRational operator+(SymRational a, const SymRational& b) { return a += b; }
    friend SymRational operator-(SymRational a, const SymRational& b) { return a -= b; }
    friend SymRational operator*(SymRational a, const mpq_class& s) { a.q *= s; return a; }
    friend SymRational operator*(const mpq_class& s, SymRational a) { a.q *= s; return a; }
    friend bool operator==(const SymRational& a, const SymRational& b) { return a.q == b.q; }
};

// Expansion of B at z = 1/7 in Z = 1 - 7z:
//   B = sum f_n Z^n + log(1 - phi) sum g_n Z^n.
struct SingExpansionB {
    std::size_t order = 0;
    std::vector<PrecReal> f;
    std::vector<SymRational> g;
    // rational series multiplying the two log prefactors
    // Gamma(a+b+1)/(Gamma(a)Gamma(b)) for (1/3, 2/3) and (2/3, 4/3)
    std::vector<mpq_class> g_part_13;
    std::vector<mpq_class> g_part_23;
};

inline constexpr std::size_t kMaxExpansionOrder = 41;

SingExpansionB expand_fg(std::size_t order, Precision p);
SingExpansionB expand_fg(std::size_t order, int digits);

// kappa_7 .. kappa_{i_max}; element j is kappa_{7+j}.
std::vector<mpq_class> kappa(std::size_t i_max);

// 7^n (sqrt3/pi) sum_{i=7}^{order} kappa_i / n^i
PrecReal asym_bn(std::size_t n, std::size_t order, int digits = 60);
// The same series without the 7^n factor.
PrecReal asym_bn_scaled(std::size_t n, const std::vector<mpq_class>& kappas, std::size_t order, Precision p);

struct PsiExpansion {
    std::vector<PrecReal> gamma;  // degree-six polynomial in V = 1 - rho z
    PrecReal C;                   // coefficient of V^6 log V
    PrecReal C_closed;            // 7^5 K rho / (6! (7 + rho lambda)^7)
    PrecReal rho;                 // 7 / f_0
    PrecReal w_scale;             // W = w_scale * V
    PrecReal log_slope;           // c in Y = W - Q(Y) - c Y^6 log Y
    std::vector<PrecReal> q_coeffs;              // a_2 .. a_6 of Q
    std::vector<std::vector<PrecReal>> iterates;  // Y after each substitution
};

// Substitution Y <- W - Q(Y), starting from Y = W.
PsiExpansion bootstrap_psi(int digits, int iterations = 5);

struct AExpansion {
    std::vector<PrecReal> eta;  // degree-seven polynomial in V
    std::vector<PrecReal> T;    // degree-six Taylor part of 1/gamma
    PrecReal log_coeff;         // coefficient of V^6 log V, equals -49 C / rho
    PrecReal C;
    PrecReal rho;
    PrecReal M;                 // 49 * 6! * C / rho
};

AExpansion sing_A(int digits);
AExpansion sing_A(const PsiExpansion& psi);

PrecReal asym_an(std::size_t n, int digits = 60);
PrecReal asym_an(const AExpansion& a, std::size_t n);

// Taylor coefficients of 1/p up to `degree`.
std::vector<PrecReal> reciprocal_poly(const std::vector<PrecReal>& p, std::size_t degree);

// Inverse of y(w) = w B(w) on [0, 1/7], by bisection over rationals.
PrecReal psi_by_inversion(const PrecReal& z, Precision p);

}  // namespace g2t
