#pragma once

#include "g2t/prec_real.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace g2t {

// Rational ingredients of the hypergeometric closed form of B at a point z.
struct ClosedFormPieces {
    mpq_class r1;   // (z+1)^2 (214z^3+45z^2+60z+5) / (z-1)
    mpq_class r2;   // 6z^2 (z+1)^2 (101z^2+74z+5) / (z-1)^2
    mpq_class phi;  // 27 (z+1) z^2 / (1-z)^3
    mpq_class p;    // 28z^4+66z^3+46z^2+15z+1
};

ClosedFormPieces closed_form_pieces(const mpq_class& z);

// B(z) for rational z in (-1/2, 1/7].
PrecReal eval_B(const mpq_class& z, Precision p);
PrecReal eval_B(const mpq_class& z, int digits);

struct ConstantRecord {
    std::string name;
    PrecReal value;        // from the closed form
    PrecReal route;        // from an independent computation
    std::string closed_form;
    std::string route_description;
    std::string paper_approx;  // empty when not printed
    bool certified = false;    // value and route overlap
};

class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// rho, lambda, K, M, y'(1/7), A'(1/rho). `corrupt` names a constant whose
// closed form is perturbed by a relative 1e-25 (negative-test hook).
std::vector<ConstantRecord> constants(int digits, const std::string& corrupt = "");

// Closed forms alone.
PrecReal rho_closed(Precision p);
PrecReal lambda_closed(Precision p);
PrecReal K_closed(Precision p);
PrecReal M_closed(Precision p);
PrecReal sqrt3_over_pi(Precision p);

}  // namespace g2t
