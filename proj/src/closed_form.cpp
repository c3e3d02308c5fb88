#include "g2t/closed_form.hpp"

#include "g2t/sing.hpp"
#include "g2t/special.hpp"
#include "g2t/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace g2t {

ClosedFormPieces closed_form_pieces(const mpq_class& z) {
    const mpq_class z2 = z * z, z3 = z2 * z, z4 = z3 * z;
    const mpq_class zp1 = z + 1, zm1 = z - 1;
    ClosedFormPieces c;
    c.r1 = zp1 * zp1 * (214 * z3 + 45 * z2 + 60 * z + 5) / zm1;
    c.r2 = 6 * z2 * zp1 * zp1 * (101 * z2 + 74 * z + 5) / (zm1 * zm1);
    const mpq_class omz = 1 - z;
    c.phi = 27 * zp1 * z2 / (omz * omz * omz);
    c.p = 28 * z4 + 66 * z3 + 46 * z2 + 15 * z + 1;
    return c;
}

namespace {

// B near 0 from the exact coefficients, with b_n <= 7^n bounding the tail.
PrecReal series_B(const mpq_class& z, Precision p) {
    const double t = 7.0 * std::fabs(z.get_d());
    const double bits = static_cast<double>(p.bits + 8);
    const std::size_t N = static_cast<std::size_t>(std::ceil(bits * std::log(2.0) / -std::log(t))) + 2;
    WalkOptions opt;
    opt.exact_limit = std::max<std::size_t>(N, 500);
    const auto b = bn_exact_sequence(N, opt);
    mpq_class sum = 0, pw = 1;
    for (std::size_t n = 0; n <= N; ++n) {
        sum += b[n] * pw;
        pw *= z;
    }
    PrecReal r(sum, p);
    r.inflate(std::pow(t, static_cast<double>(N + 1)) / (1.0 - t) * (1 + 1e-12));
    return r;
}

PrecReal perturbed(const PrecReal& v, bool corrupt) {
    if (!corrupt) return v;
    return v * mpq_class(mpz_class("10000000000000000000000001"), mpz_class("10000000000000000000000000"));
}

}  // namespace

PrecReal eval_B(const mpq_class& z, Precision p) {
    if (z <= mpq_class(-1, 2) || z > mpq_class(1, 7))
        throw std::domain_error("eval_B needs z in (-1/2, 1/7]");
    if (z == 0) return PrecReal(1, p);
    if (abs(z) < mpq_class(1, 20)) return series_B(z, p);
    // the bracket cancels down to 30 z^5 B(z)
    const long guard = 5 * static_cast<long>(std::ceil(std::log2(1.0 / std::fabs(z.get_d())))) + 16;
    const Precision wp = p.widened(guard);
    const ClosedFormPieces c = closed_form_pieces(z);
    const PrecReal phi(c.phi, wp);
    const PrecReal f1 = hyp2f1(mpq_class(1, 3), mpq_class(2, 3), 2, phi, wp);
    const PrecReal f2 = hyp2f1(mpq_class(2, 3), mpq_class(4, 3), 3, phi, wp);
    const mpq_class z5 = z * z * z * z * z;
    PrecReal num = f1 * c.r1 + f2 * c.r2 + PrecReal(mpq_class(5 * c.p), wp);
    return (num / mpq_class(30 * z5)).with_precision(p);
}

PrecReal eval_B(const mpq_class& z, int digits) { return eval_B(z, Precision::digits(digits)); }

PrecReal sqrt3_over_pi(Precision p) { return sqrt(PrecReal(3, p)) / PrecReal::pi(p); }

PrecReal rho_closed(Precision p) {
    const PrecReal pi = PrecReal::pi(p), s3 = sqrt(PrecReal(3, p));
    return pi * mpq_class(5) / (pi * mpq_class(8575) - s3 * mpq_class(15552));
}

PrecReal lambda_closed(Precision p) {
    const PrecReal pi = PrecReal::pi(p), s3 = sqrt(PrecReal(3, p));
    return (s3 * mpq_class(852768) - pi * mpq_class(470155)) / (pi * mpq_class(10));
}

PrecReal K_closed(Precision p) { return sqrt3_over_pi(p) * mpq_class(4117715, 864); }

PrecReal M_closed(Precision p) {
    const PrecReal pi = PrecReal::pi(p), s3 = sqrt(PrecReal(3, p));
    const PrecReal ratio = (pi * mpq_class(8575) - s3 * mpq_class(15552)) / (s3 * mpq_class(2592) - pi * mpq_class(1429));
    return sqrt3_over_pi(p) * mpq_class(4, 421875) * pow(ratio, 7);
}

std::vector<ConstantRecord> constants(int digits, const std::string& corrupt) {
    if (digits < 30) throw std::domain_error("constants need at least 30 digits");
    const Precision p = Precision::digits(digits);

    const PrecReal rho_c = perturbed(rho_closed(p), corrupt == "rho");
    const PrecReal lam_c = perturbed(lambda_closed(p), corrupt == "lambda");
    const PrecReal K_c = perturbed(K_closed(p), corrupt == "K");
    const PrecReal M_c = perturbed(M_closed(p), corrupt == "M");
    const mpq_class seven(7);
    const PrecReal y_c = perturbed(lam_c + PrecReal(7, p) / rho_c, corrupt == "y_prime");
    const PrecReal A_c = perturbed(PrecReal(7, p) - PrecReal(49, p) / (rho_c * lam_c + seven), corrupt == "A_prime");

    const PrecReal b_seventh = eval_B(mpq_class(1, 7), p);
    const PrecReal rho_r = PrecReal(7, p) / b_seventh;
    const SingExpansionB fg = expand_fg(8, p);
    const PrecReal lam_r = -fg.f[1];
    const PrecReal g6 = log_prefactor(mpq_class(1, 3), mpq_class(2, 3), p) * fg.g_part_13[6] +
                        log_prefactor(mpq_class(2, 3), mpq_class(4, 3), p) * fg.g_part_23[6];
    const PrecReal K_r = -g6 * mpq_class(720);
    const PrecReal M_r = K_r / pow(rho_r * lam_r / seven + mpq_class(1), 7);
    const PrecReal y_r = lam_r + b_seventh;
    const PrecReal A_r = (y_r - b_seventh) * seven / y_r;

    std::vector<ConstantRecord> out;
    auto add = [&](const char* name, const PrecReal& v, const PrecReal& r, const char* cf, const char* rd,
                   const char* approx) {
        out.push_back({name, v, r, cf, rd, approx, v.overlaps(r)});
    };
    add("rho", rho_c, rho_r, "5*pi/(8575*pi - 15552*sqrt(3))", "7/B(1/7), Gauss values of both 2F1 at phi = 1",
        "6.8211");
    add("lambda", lam_c, lam_r, "(852768*sqrt(3) - 470155*pi)/(10*pi)", "-f_1 from the expansion at z = 1/7",
        "0.0639");
    add("K", K_c, K_r, "4117715*sqrt(3)/(864*pi)", "-6!*g_6 with gamma-function prefactors", "2627.6");
    add("M", M_c, M_r,
        "(4*sqrt(3)/(421875*pi))*((8575*pi - 15552*sqrt(3))/(2592*sqrt(3) - 1429*pi))^7",
        "K/(1 + rho*lambda/7)^7 from the route values", "1721.0");
    add("y_prime", y_c, y_r, "lambda + 7/rho", "lambda + B(1/7) from the route values", "1.0901");
    add("A_prime", A_c, A_r, "7 - 49/(rho*lambda + 7)", "7*(y'(1/7) - B(1/7))/y'(1/7) from the route values",
        "0.4106");
    return out;
}

}  // namespace g2t
