#include <cmath>
#include <utility>

#include "qhagg/verify.hpp"
#include "sweep.hpp"

namespace qhagg {

AggregationReport check_aggregation(const AggregationFunction& a, const Grid& grid, double tol) {
    return scan_aggregation(a.evaluator(), grid, tol);
}

ResidualReport check_quasi_homogeneity(const AggregationFunction& a, const PhiSpec& phi,
                                       const PsiSpec& psi, const Grid& grid, double tol) {
    // psi(lambda) is shared by a whole lambda slab; precompute it.
    std::vector<double> psi_at(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        psi_at[i] = psi_value(psi, grid[i]);
    }
    const auto& eval = a.evaluator();
    const double n = static_cast<double>(grid.resolution());
    return detail::sweep_grid3(grid, tol, [&](double lambda, double x, double y) {
        const auto idx = static_cast<std::size_t>(std::lround(lambda * n));
        const double lhs = eval(lambda * x, lambda * y);
        const double rhs = phi.rescale(eval(x, y), ExtNonneg(psi_at[idx]));
        return std::pair{lhs, rhs};
    });
}

ResidualReport check_multiplicative(const std::function<double(double)>& psi, const Grid& grid,
                                    double tol) {
    ResidualReport report;
    report.tol = tol;
    report.points = grid.size() * grid.size();
    for (double lambda : grid) {
        const double p_lambda = psi(lambda);
        for (double x : grid) {
            const double lhs = psi(lambda * x);
            const double rhs = p_lambda * psi(x);
            const double r = detail::residual_of(lhs, rhs);
            report.max_residual = std::max(report.max_residual, r);
            if (r > tol && !report.witness) {
                report.witness = GridWitness{lambda, x, 0.0, lhs, rhs, r};
            }
        }
    }
    report.passed = !report.witness;
    return report;
}

ResidualReport check_multiplicative(const PsiSpec& psi, const Grid& grid, double tol) {
    return check_multiplicative([&psi](double x) { return psi_value(psi, x); }, grid, tol);
}

ResidualReport check_homogeneous_order(const std::function<double(double, double)>& f, double k,
                                       const Grid& grid, double tol) {
    if (!(k > 0.0)) {
        throw std::invalid_argument("check_homogeneous_order: order must be positive");
    }
    return detail::sweep_grid3(grid, tol, [&](double lambda, double x, double y) {
        const double scale = k == 1.0 ? lambda : std::pow(lambda, k);
        return std::pair{f(lambda * x, lambda * y), scale * f(x, y)};
    });
}

namespace {

double psi_from_phi(const PhiSpec& phi, double delta_value) {
    return ext_div(phi(delta_value), phi.b()).value();
}

}  // namespace

PsiRecovery recover_psi(const AggregationFunction& a, const PhiSpec& phi, const Grid& grid,
                        double fit_tol) {
    PsiRecovery out;
    out.lambdas.assign(grid.begin(), grid.end());
    out.samples.reserve(grid.size());
    for (double lambda : grid) {
        out.samples.push_back(psi_from_phi(phi, a(lambda, lambda)));
    }

    bool all_zero = true;
    bool all_one = true;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        all_zero = all_zero && std::abs(out.samples[i]) <= fit_tol;
        all_one = all_one && std::abs(out.samples[i] - 1.0) <= fit_tol;
    }
    auto endpoint_residual = [&] {
        return std::max(std::abs(out.samples.front()), std::abs(out.samples.back() - 1.0));
    };

    if (grid.size() > 2 && (all_zero || all_one)) {
        const PsiSpec step = all_zero ? PsiSpec{PsiStepAtOne{}} : PsiSpec{PsiStepAtZero{}};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out.fit_residual = std::max(
                out.fit_residual, std::abs(out.samples[i] - psi_value(step, out.lambdas[i])));
        }
        if (out.fit_residual <= fit_tol) {
            out.fit = step;
        } else {
            out.note = "interior samples are constant but the endpoints do not match a step";
        }
        return out;
    }

    std::vector<double> xs;
    std::vector<double> ys;
    for (int i = 1; i <= 9; ++i) {
        const double lambda = i / 10.0;
        xs.push_back(lambda);
        ys.push_back(psi_from_phi(phi, a(lambda, lambda)));
    }
    for (double y : ys) {
        if (!(y > 0.0)) {
            out.note = "psi vanishes at an interior point without vanishing on all of (0,1)";
            out.fit_residual = kInfinity;
            return out;
        }
    }
    auto fit = fit_power_exponent(xs, ys);
    if (!fit || !(fit->exponent > 0.0)) {
        out.note = "no positive power-law exponent";
        out.fit_residual = kInfinity;
        return out;
    }
    out.fit_residual = endpoint_residual();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.fit_residual = std::max(
            out.fit_residual, std::abs(out.samples[i] - std::pow(out.lambdas[i], fit->exponent)));
    }
    if (out.fit_residual <= fit_tol) {
        out.fit = PsiPower{fit->exponent};
    } else {
        out.note = "power-law fit residual " + format_shortest(out.fit_residual) +
                   " exceeds " + format_shortest(fit_tol);
    }
    return out;
}

DiagonalReport diagonal_bijection_check(const UnitFunction& delta, const Grid& grid, double tol,
                                        std::optional<double> gap_tol) {
    DiagonalReport report;
    report.gap_tol = gap_tol.value_or(10.0 / static_cast<double>(grid.resolution()));
    report.continuity_declared = delta.flags().continuous_bijection;
    report.endpoints_ok =
        std::abs(delta(0.0)) <= tol && std::abs(delta(1.0) - 1.0) <= tol;

    double prev = delta(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = delta(grid[i]);
        if (!(v > prev) && !report.first_non_increase) {
            report.strictly_increasing = false;
            report.first_non_increase = std::pair{grid[i - 1], grid[i]};
        }
        const double jump = std::abs(v - prev);
        if (jump > report.max_jump) {
            report.max_jump = jump;
            report.max_jump_at = {grid[i - 1], grid[i]};
        }
        prev = v;
    }
    const bool gap_ok = report.continuity_declared || report.max_jump <= report.gap_tol;
    report.passed = report.endpoints_ok && report.strictly_increasing && gap_ok;
    return report;
}

}  // namespace qhagg
