// One PASS/FAIL line per acceptance criterion.
#include <CLI11.hpp>

#include "g2t/closed_form.hpp"
#include "g2t/convergence.hpp"
#include "g2t/criterion.hpp"
#include "g2t/exact_series.hpp"
#include "g2t/generator.hpp"
#include "g2t/sing.hpp"
#include "g2t/walk.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace g2t;

namespace {

const Precision P60 = Precision::digits(60);

struct Outcome {
    bool pass = false;
    std::string measured;
};

struct Criterion {
    std::string title;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome sequences() {
    const long b_ref[] = {1, 0, 1, 1, 4, 10, 35, 120, 455, 1792};
    const long a_ref[] = {1, 0, 1, 1, 2, 5, 15, 50, 181, 697};
    const auto b = bn_exact_sequence(9);
    const auto a = an_exact_sequence(9);
    int bad = 0;
    for (int n = 0; n < 10; ++n) bad += (b[n] != b_ref[n]) + (a[n] != a_ref[n]);
    return {bad == 0, "b_9 = " + b[9].get_str() + ", a_9 = " + a[9].get_str() + ", mismatches " + std::to_string(bad)};
}

Outcome roundtrip() {
    const G2Generator g2(300);
    const ExactSeries A = g2.coefficients(301);
    const ExactSeries y = lagrange_invert(A, 302);
    const ExactSeries back = recover_generator(y.divided_by_x(1), 301);
    const bool same = back == A;
    return {same, std::string(same ? "identical" : "differs") + " through x^300, a_300 has " +
                      std::to_string(A[300].get_num().get_str().size()) + " digits"};
}

Outcome certification() {
    const auto recs = constants(60);
    bool ok = true;
    std::ostringstream m;
    for (const auto& r : recs) {
        const auto dot = r.paper_approx.find('.');
        const double unit = std::pow(10.0, -static_cast<double>(r.paper_approx.size() - dot - 1));
        const double off = std::fabs(r.value.mid_double() - std::stod(r.paper_approx));
        const bool good = r.certified && off < unit && r.value.certifies(1e-50);
        ok = ok && good;
        m << r.name << "=" << r.value.mid_string(8) << (good ? "" : "(!)") << " ";
    }
    return {ok, m.str() + "all routes overlap and every value is within one unit of the printed digit"};
}

Outcome kappas() {
    const auto k = kappa(15);
    const auto ref = oracle::kappa(expand_fg(15, P60).g, 15);
    bool ok = k.size() == 9 && k[0] == mpq_class(4117715, 864);
    for (std::size_t i = 7; i <= 15 && ok; ++i) ok = k[i - 7] == ref[i];
    return {ok, "kappa_7 = " + k[0].get_str() + ", kappa_15 = " + k.back().get_str()};
}

Outcome b_asymptotics() {
    const auto rows = converge_b(2000, 7);
    const double far = rows.back().rel_error;
    const double near = std::fabs((PrecReal(bn_exact(100), P60) / asym_bn(100, 10) - mpq_class(1)).mid_double());
    return {far < 0.01 && near < 1e-4, "n=2000 order 7: " + fmt("%.4e", far) + " (< 1e-2); n=100 order 10: " +
                                            fmt("%.4e", near) + " (< 1e-4)"};
}

Outcome a_asymptotics() {
    const auto rows = converge_a(300);
    double at100 = NAN, at300 = rows.back().rel_error;
    for (const auto& r : rows)
        if (r.n == 100) at100 = r.rel_error;
    return {at300 < 0.05 && at300 < at100,
            "n=300: " + fmt("%.4e", at300) + " (< 5e-2); n=100: " + fmt("%.4e", at100) + " (must exceed n=300)"};
}

Outcome fixtures() {
    std::ostringstream m;
    bool ok = true;

    const CriterionReport cat = analyze(CatalanGenerator());
    const PrecReal c_ref = PrecReal(1, P60) / (sqrt(PrecReal::pi(P60)) * mpq_class(4));
    const bool cat_ok = cat.branch == Branch::strict && cat.tau && cat.tau->contains(mpq_class(1, 2)) &&
                        cat.r.contains(mpq_class(1, 4)) && cat.C && std::fabs((*cat.C - c_ref).mid_double()) < 1e-10;
    ok = ok && cat_ok;
    m << "catalan " << to_string(cat.branch) << (cat_ok ? "" : "(!)") << "; ";

    const CriterionReport ex = analyze(Example2Generator());
    const std::size_t N = 60;
    const ExactSeries A2 = Example2Generator().coefficients(N);
    const ExactSeries y = lagrange_invert(A2, N);
    const ExactSeries z({0, 1}, N), z2 = z * z;
    const ExactSeries y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y;
    const ExactSeries q = z2 * y5 * 1024 - z2 * y4 * 256 + z2 * y2 * 68 - z * y3 * 64 - z2 * y * 20 + z * y2 * 20 +
                          z2 * 3 - z * y * 4 + y2;
    const bool quintic = A2.integral() && q == ExactSeries(N);
    const ExactSeries big = Example2Generator(2001).tree_series(2001);
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, big[2000].get_num_mpz_t());
    const double scaled = std::exp(std::log(mant) + static_cast<double>(e) * std::log(2.0) - 2000 * std::log(6.0) +
                                   1.5 * std::log(2000.0));
    const double k2 = std::sqrt(3.0) / (16 * std::sqrt(M_PI));
    const double dev = scaled / k2 - 1;
    const bool ex_ok = ex.branch == Branch::sharp && ex.r.contains(mpq_class(1, 6)) && quintic && std::fabs(dev) < 0.02;
    ok = ok && ex_ok;
    m << "example2 " << to_string(ex.branch) << ", quintic " << (quintic ? "exact" : "fails")
      << ", constant deviation " << fmt("%.4f", dev) << " (< 0.02)" << (ex_ok ? "" : "(!)") << "; ";

    const G2Generator g2(300);
    const CriterionReport gr = analyze(g2);
    const ExactSeries a = g2.coefficients(301);
    const PrecReal R = PrecReal(1, P60) / rho_closed(P60);
    PrecReal sum(0L, P60), pw(1, P60);
    bool below = true;
    for (std::size_t n = 1; n <= 300; ++n) {
        pw *= R;
        sum += pw * (a[n] * static_cast<long>(n - 1));
        below = below && (PrecReal(1, P60) - sum).positive();
    }
    const bool g_ok = gr.branch == Branch::sharp && below;
    ok = ok && g_ok;
    m << "g2 " << to_string(gr.branch) << ", max partial sum " << fmt("%.6f", sum.mid_double()) << (g_ok ? "" : "(!)");
    return {ok, m.str()};
}

Outcome saddle() {
    double worst = 0;
    for (std::size_t n : {2, 4, 40}) worst = std::max(worst, std::fabs(saddle_quadrature(n).value / bn_scaled(n) - 1));
    return {worst < 1e-6, "worst relative difference " + fmt("%.3e", worst) + " over n = 2, 4, 40"};
}

Outcome dual_m() {
    const AExpansion A = sing_A(60);
    const PrecReal closed = M_closed(P60);
    const bool ok = A.M.overlaps(closed);
    return {ok, "49*6!*C/rho = " + A.M.mid_string(20) + " +- " + A.M.rad_string() + ", closed " +
                    closed.mid_string(20) + " +- " + closed.rad_string()};
}

Outcome order_improvement() {
    const PrecReal b = PrecReal(bn_exact(200), P60);
    std::ostringstream m;
    double prev = INFINITY;
    bool ok = true;
    for (std::size_t order = 7; order <= 10; ++order) {
        const double rel = std::fabs((b / asym_bn(200, order) - mpq_class(1)).mid_double());
        ok = ok && rel < prev;
        prev = rel;
        m << "order " << order << ": " << fmt("%.3e", rel) << (order < 10 ? ", " : "");
    }
    return {ok, m.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app("acceptance checks");
    int only = 0;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::map<int, Criterion> all = {
        {1, {"sequence fidelity", 1, sequences}},
        {2, {"roundtrip on the G2 generator to order 300", 120, roundtrip}},
        {3, {"constant certification at 60 digits", 30, certification}},
        {4, {"exact kappa_7 .. kappa_15", 0, kappas}},
        {5, {"b_n asymptotics", 300, b_asymptotics}},
        {6, {"a_n asymptotics", 600, a_asymptotics}},
        {7, {"criterion fixtures", 0, fixtures}},
        {8, {"saddle quadrature", 60, saddle}},
        {9, {"dual-route M", 0, dual_m}},
        {10, {"order improvement at n = 200", 0, order_improvement}},
    };

    int failed = 0;
    for (const auto& [id, c] : all) {
        if (only && id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s == 0 || secs < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::string timing = fmt("%.2f s", secs);
        if (c.limit_s > 0) timing += fmt(" (limit %.0f s)", c.limit_s);
        std::printf("[%s] criterion %d: %s | measured: %s | %s\n", pass ? "PASS" : "FAIL", id, c.title.c_str(),
                    o.measured.c_str(), timing.c_str());
    }
    return failed == 0 ? 0 : 1;
}
