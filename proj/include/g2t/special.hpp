#pragma once

#include "g2t/prec_real.hpp"

#include <gmpxx.h>

#include <vector>

namespace g2t {

// Exact Bernoulli number B_n (B_1 = -1/2), cached and thread-safe.
mpq_class bernoulli(unsigned n);

PrecReal gamma_rational(const mpq_class& q, Precision p);
PrecReal digamma_rational(const mpq_class& q, Precision p);

enum class Hyp2f1Path { automatic, series, connection, gauss };

// 2F1(a, b; c; z) for real z. Regimes: direct series for |z| <= 0.9,
// the logarithmic connection at z = 1 when c = a + b + 1 and |1 - z| < 0.9,
// Gauss's value at z = 1 exactly.
PrecReal hyp2f1(const mpq_class& a, const mpq_class& b, const mpq_class& c, const PrecReal& z,
                Precision p, Hyp2f1Path path = Hyp2f1Path::automatic);

// Gamma(a + b + 1) / (Gamma(a) Gamma(b)), the prefactor of the logarithmic terms.
PrecReal log_prefactor(const mpq_class& a, const mpq_class& b, Precision p);
// c_k = psi(a+k+1) + psi(b+k+1) - psi(k+1) - psi(k+2) for k = 0 .. count-1.
std::vector<PrecReal> connection_psi_terms(const mpq_class& a, const mpq_class& b, std::size_t count,
                                           Precision p);

}  // namespace g2t
