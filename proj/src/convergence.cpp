#include "g2t/convergence.hpp"

#include "g2t/exact_series.hpp"
#include "g2t/sing.hpp"

#include <cmath>
#include <stdexcept>

namespace g2t {

std::vector<std::size_t> geometric_grid(std::size_t n_max) {
    std::vector<std::size_t> g;
    for (std::size_t decade = 10; decade <= n_max; decade *= 10)
        for (std::size_t m : {1, 2, 5})
            if (decade * m <= n_max) g.push_back(decade * m);
    if (g.empty() || g.back() != n_max) g.push_back(n_max);
    return g;
}

std::vector<mpz_class> an_exact_sequence(std::size_t N, const WalkOptions& opt) {
    const auto b = ExactSeries::from_integers(bn_exact_sequence(N, opt));
    return recover_generator(b, N + 1).integers();
}

std::vector<ConvergenceRow> converge_b(std::size_t n_max, std::size_t order, const WalkOptions& opt, int digits) {
    if (n_max < 1) throw std::domain_error("n_max must be at least 1");
    if (order < 7 || order > kMaxExpansionOrder - 1) throw std::out_of_range("order must lie in 7..40");
    const Precision p = Precision::digits(digits);
    const auto kappas = kappa(order);
    const std::size_t exact_top = std::min(n_max, opt.exact_limit);
    const auto exact = bn_exact_sequence(exact_top, opt);
    std::vector<double> scaled;
    if (n_max > opt.exact_limit) scaled = bn_scaled_sequence(n_max, opt.threads);

    std::vector<ConvergenceRow> rows;
    for (std::size_t n : geometric_grid(n_max)) {
        ConvergenceRow row;
        row.n = n;
        const PrecReal asym = asym_bn_scaled(n, kappas, order, p);
        if (n <= exact_top) {
            PrecReal v = PrecReal(exact[n], p) / pow(PrecReal(7, p), static_cast<long>(n));
            row.value = v.mid_double();
            row.rel_error = std::fabs((v / asym - mpq_class(1)).mid_double());
        } else {
            row.exact = false;
            row.value = scaled[n];
            row.rel_error = std::fabs(row.value / asym.mid_double() - 1.0);
        }
        row.asymptotic = asym.mid_double();
        rows.push_back(row);
    }
    return rows;
}

std::vector<ConvergenceRow> converge_a(std::size_t n_max, const WalkOptions& opt, int digits) {
    if (n_max < 1) throw std::domain_error("n_max must be at least 1");
    if (n_max > opt.exact_limit)
        throw ExactLimitError("a_n needs exact b_n; n_max exceeds the exact limit");
    const Precision p = Precision::digits(digits);
    const AExpansion ae = sing_A(digits);
    const auto a = an_exact_sequence(n_max, opt);
    std::vector<ConvergenceRow> rows;
    for (std::size_t n : geometric_grid(n_max)) {
        ConvergenceRow row;
        row.n = n;
        const PrecReal v = PrecReal(a[n], p) / pow(ae.rho, static_cast<long>(n));
        const PrecReal asym = ae.M / pow(PrecReal(static_cast<long>(n), p), 7);
        row.value = v.mid_double();
        row.asymptotic = asym.mid_double();
        row.rel_error = std::fabs((v / asym - mpq_class(1)).mid_double());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace g2t
