#include "g2t/closed_form.hpp"
#include "g2t/convergence.hpp"
#include "g2t/criterion.hpp"
#include "g2t/exact_series.hpp"
#include "g2t/generator.hpp"
#include "g2t/sing.hpp"
#include "g2t/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace g2t;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { ok = 0, usage = 2, certification = 3, numerical = 4 };

struct RunConfig {
    int digits = 60;
    std::size_t exact_limit = 500;
    std::string format;  // empty: the command's natural format
    std::string out_path;
    int threads = 1;
    std::string inject_fault;

    WalkOptions walk() const { return {exact_limit, threads}; }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string mid(const PrecReal& x, int digits) { return x.mid_string(digits); }

Json ball(const PrecReal& x, int digits) { return {{"midpoint", mid(x, digits)}, {"radius", x.rad_string()}}; }

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.out_path);
    f << text;
}

std::string dump(Json doc) {
    Json out{{"schema_version", kSchemaVersion}};
    out.update(doc);
    return out.dump(2) + "\n";
}

int cmd_seq(const RunConfig& cfg, const std::string& which, std::size_t n, bool scaled) {
    std::vector<std::string> values;
    if (scaled) {
        if (which != "b") throw UsageError("--scaled applies to --which b only");
        for (double v : bn_scaled_sequence(n, cfg.threads)) values.push_back(sci(v));
    } else {
        if (n > cfg.exact_limit)
            throw UsageError("n exceeds the exact limit " + std::to_string(cfg.exact_limit) +
                             "; use --scaled for b_n / 7^n");
        std::vector<mpz_class> v;
        if (which == "b") v = bn_exact_sequence(n, cfg.walk());
        else if (which == "a") v = an_exact_sequence(n, cfg.walk());
        else if (which == "catalan") v = CatalanGenerator(n + 1).tree_series(n + 1).integers();
        else v = Example2Generator(n + 1).tree_series(n + 1).integers();
        for (const auto& x : v) values.push_back(x.get_str());
    }
    const std::string column = scaled ? "b_n_over_7n" : "value";
    if (cfg.format == "json") {
        emit(cfg, dump({{"which", which}, {"column", column}, {"values", values}}));
    } else {
        std::ostringstream os;
        os << "n," << column << "\n";
        for (std::size_t i = 0; i < values.size(); ++i) os << i << "," << values[i] << "\n";
        emit(cfg, os.str());
    }
    return ok;
}

int cmd_constants(const RunConfig& cfg) {
    const auto recs = constants(cfg.digits, cfg.inject_fault);
    bool all = true;
    for (const auto& r : recs) {
        if (!r.certified) {
            all = false;
            std::cerr << "certification failed: " << r.name << " closed form " << mid(r.value, 30) << " vs route "
                      << mid(r.route, 30) << "\n";
        }
    }
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& r : recs)
            arr.push_back({{"name", r.name},
                           {"decimal_midpoint", mid(r.value, cfg.digits)},
                           {"decimal_radius", r.value.rad_string()},
                           {"closed_form", r.closed_form},
                           {"paper_approx", r.paper_approx},
                           {"route", r.route_description},
                           {"route_midpoint", mid(r.route, cfg.digits)},
                           {"route_radius", r.route.rad_string()},
                           {"certified", r.certified}});
        emit(cfg, dump({{"digits", cfg.digits}, {"constants", arr}}));
    } else {
        std::ostringstream os;
        os << "name,midpoint,radius,route_midpoint,route_radius,certified\n";
        for (const auto& r : recs)
            os << r.name << "," << mid(r.value, cfg.digits) << "," << r.value.rad_string() << ","
               << mid(r.route, cfg.digits) << "," << r.route.rad_string() << "," << (r.certified ? 1 : 0) << "\n";
        emit(cfg, os.str());
    }
    return all ? ok : certification;
}

int cmd_converge(const RunConfig& cfg, const std::string& which, std::size_t n_max, std::size_t order) {
    std::vector<ConvergenceRow> rows;
    if (which == "b") {
        if (n_max > 1000000) throw UsageError("n_max above 10^6");
        rows = converge_b(n_max, order, cfg.walk(), cfg.digits);
    } else {
        if (order != 7) throw UsageError("the a_n asymptotic has only its leading term (order 7)");
        if (n_max > cfg.exact_limit) throw UsageError("a_n needs exact b_n; raise --exact-limit");
        rows = converge_a(n_max, cfg.walk(), cfg.digits);
    }
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back({{"n", r.n},
                           {"exact_or_scaled", sci(r.value)},
                           {"asymptotic", sci(r.asymptotic)},
                           {"rel_error", sci(r.rel_error)},
                           {"source", r.exact ? "exact" : "scaled"}});
        emit(cfg, dump({{"which", which}, {"order", order}, {"rows", arr}}));
    } else {
        std::ostringstream os;
        os << "n,exact_or_scaled,asymptotic,rel_error\n";
        for (const auto& r : rows)
            os << r.n << "," << sci(r.value) << "," << sci(r.asymptotic) << "," << sci(r.rel_error) << "\n";
        emit(cfg, os.str());
    }
    return ok;
}

int cmd_criterion(const RunConfig& cfg, const std::string& path) {
    std::unique_ptr<Generator> gen;
    try {
        gen = load_generator_spec(path, cfg.exact_limit);
    } catch (const SpecParseError& e) {
        throw UsageError(e.what());
    }
    const CriterionReport rep = analyze(*gen, cfg.digits);
    const int d = cfg.digits;
    Json doc{{"generator", {{"kind", gen->kind()}, {"name", gen->name()}, {"order", gen->order()}}},
             {"branch", to_string(rep.branch)}};
    doc["tau"] = rep.tau ? ball(*rep.tau, d) : Json(nullptr);
    doc["r"] = ball(rep.r, d);
    doc["C"] = rep.C ? ball(*rep.C, d) : Json(nullptr);
    doc["R"] = rep.R ? ball(*rep.R, d) : Json("infinite");
    doc["gcd_period"] = rep.gcd_period;
    doc["boundary_root"] = rep.boundary_root;
    Json diag{{"alpha_fit", rep.alpha_fit ? Json(sci(*rep.alpha_fit)) : Json(nullptr)}};
    if (rep.y_at_r) {
        diag["y_at_r"] = ball(*rep.y_at_r, 20);
        diag["y_tail_declared"] = rep.y_tail_declared;
    }
    doc["diagnostics"] = diag;
    if (cfg.format == "json") {
        emit(cfg, dump(doc));
    } else {
        std::ostringstream os;
        os << "field,value\n";
        os << "branch," << to_string(rep.branch) << "\n";
        os << "tau," << (rep.tau ? mid(*rep.tau, d) : "") << "\n";
        os << "r," << mid(rep.r, d) << "\n";
        os << "C," << (rep.C ? mid(*rep.C, d) : "") << "\n";
        os << "R," << (rep.R ? mid(*rep.R, d) : "infinite") << "\n";
        os << "gcd_period," << rep.gcd_period << "\n";
        os << "boundary_root," << (rep.boundary_root ? 1 : 0) << "\n";
        emit(cfg, os.str());
    }
    return ok;
}

int cmd_saddle(const RunConfig& cfg, std::size_t n, std::size_t grid, std::size_t max_grid) {
    const SaddleResult s = saddle_quadrature(n, grid, max_grid);
    const double dp = bn_scaled(n, cfg.threads);
    const double rel = std::fabs(s.value / dp - 1.0);
    if (cfg.format == "json") {
        emit(cfg, dump({{"n", n},
                        {"grid", s.grid},
                        {"quadrature", sci(s.value)},
                        {"imaginary", sci(s.imag)},
                        {"dp", sci(dp)},
                        {"rel_diff", sci(rel)}}));
    } else {
        std::ostringstream os;
        os << "n,grid,quadrature,dp,rel_diff\n"
           << n << "," << s.grid << "," << sci(s.value) << "," << sci(dp) << "," << sci(rel) << "\n";
        emit(cfg, os.str());
    }
    return ok;
}

int cmd_kappa(const RunConfig& cfg, std::size_t i_max) {
    const auto k = kappa(i_max);
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (std::size_t j = 0; j < k.size(); ++j)
            arr.push_back({{"i", 7 + j}, {"numerator", k[j].get_num().get_str()}, {"denominator", k[j].get_den().get_str()}});
        emit(cfg, dump({{"kappa", arr}}));
    } else {
        std::ostringstream os;
        os << "i,numerator,denominator\n";
        for (std::size_t j = 0; j < k.size(); ++j)
            os << 7 + j << "," << k[j].get_num().get_str() << "," << k[j].get_den().get_str() << "\n";
        emit(cfg, os.str());
    }
    return ok;
}

int cmd_expansion(const RunConfig& cfg) {
    const PsiExpansion psi = bootstrap_psi(cfg.digits);
    const AExpansion a = sing_A(psi);
    const int d = cfg.digits;
    auto list = [&](const std::vector<PrecReal>& v) {
        Json arr = Json::array();
        for (const auto& x : v) arr.push_back(ball(x, d));
        return arr;
    };
    if (cfg.format == "json") {
        emit(cfg, dump({{"digits", d},
                        {"gamma", list(psi.gamma)},
                        {"eta", list(a.eta)},
                        {"C", ball(psi.C, d)},
                        {"C_closed", ball(psi.C_closed, d)},
                        {"log_coeff", ball(a.log_coeff, d)},
                        {"M", ball(a.M, d)},
                        {"rho", ball(psi.rho, d)}}));
    } else {
        std::ostringstream os;
        os << "name,index,midpoint,radius\n";
        auto rows = [&](const char* name, const std::vector<PrecReal>& v) {
            for (std::size_t i = 0; i < v.size(); ++i)
                os << name << "," << i << "," << mid(v[i], d) << "," << v[i].rad_string() << "\n";
        };
        rows("gamma", psi.gamma);
        rows("eta", a.eta);
        rows("C", {psi.C});
        rows("log_coeff", {a.log_coeff});
        rows("M", {a.M});
        emit(cfg, os.str());
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"G2 invariant and triangulation sequences: exact values, asymptotics, certified constants"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--digits", cfg.digits, "working precision in decimal digits")->check(CLI::Range(30, 100000));
    app.add_option("--exact-limit", cfg.exact_limit, "largest n computed with exact integers")
        ->check(CLI::Range(std::size_t{10}, std::size_t{100000}));
    app.add_option("--format", cfg.format, "output format (json for constants, criterion, expansion; csv otherwise)")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "write output to this file");
    app.add_option("--threads", cfg.threads, "worker threads for the walk DP")->check(CLI::Range(1, 256));
    app.add_option("--inject-fault", cfg.inject_fault)->group("");

    std::string which;
    std::size_t n = 0, n_max = 0, order = 7, grid = 64, max_grid = 8192, i_max = 15;
    bool scaled = false;
    std::string spec_path;

    auto* seq = app.add_subcommand("seq", "exact sequence values");
    seq->add_option("--which", which)->required()->check(CLI::IsMember({"a", "b", "catalan", "example2"}));
    seq->add_option("--n", n)->required();
    seq->add_flag("--scaled", scaled, "b_n / 7^n in double precision");

    auto* cons = app.add_subcommand("constants", "closed-form constants with independent routes");

    auto* conv = app.add_subcommand("converge", "sequence against its asymptotic formula");
    conv->add_option("--which", which)->required()->check(CLI::IsMember({"a", "b"}));
    conv->add_option("--n-max", n_max)->required();
    conv->add_option("--order", order)->check(CLI::Range(std::size_t{7}, std::size_t{40}));

    auto* crit = app.add_subcommand("criterion", "sharpness analysis of a generator spec file");
    crit->add_option("spec", spec_path)->required();

    auto* sad = app.add_subcommand("saddle", "torus quadrature against the DP");
    sad->add_option("--n", n)->required()->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    sad->add_option("--grid", grid, "starting grid points per axis")->check(CLI::Range(std::size_t{64}, std::size_t{8192}));
    sad->add_option("--max-grid", max_grid, "largest grid before giving up")->check(CLI::Range(std::size_t{64}, std::size_t{65536}));

    auto* kap = app.add_subcommand("kappa", "exact kappa table");
    kap->add_option("--i-max", i_max)->check(CLI::Range(std::size_t{7}, std::size_t{40}));

    auto* exp = app.add_subcommand("expansion", "singular expansion of psi and A");

    for (auto* sub : {seq, cons, conv, crit, sad, kap, exp}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        const bool document = *cons || *crit || *exp;
        if (cfg.format.empty()) cfg.format = document ? "json" : "csv";
        if (*seq) return cmd_seq(cfg, which, n, scaled);
        if (*cons) return cmd_constants(cfg);
        if (*conv) return cmd_converge(cfg, which, n_max, order);
        if (*crit) return cmd_criterion(cfg, spec_path);
        if (*sad) return cmd_saddle(cfg, n, grid, max_grid);
        if (*kap) return cmd_kappa(cfg, i_max);
        if (*exp) return cmd_expansion(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ExactLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return certification;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return certification;
    } catch (const RefinementError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical;
    }
    return usage;
}
