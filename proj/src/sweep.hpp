#pragma once

// Parallel grid^3 sweep with a partition-independent reduction: the max
// residual is a max, and the witness is the one from the lowest lambda
// chunk, so results never depend on the thread count.

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "qhagg/verify.hpp"

namespace qhagg::detail {

inline double residual_of(double lhs, double rhs) {
    if (lhs == rhs) {
        return 0.0;
    }
    const double r = std::abs(lhs - rhs);
    return std::isnan(r) ? kInfinity : r;
}

inline unsigned sweep_workers(std::size_t outer) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(hw, outer));
}

/// `sides(lambda, x, y)` returns {lhs, rhs}.
template <typename Sides>
ResidualReport sweep_grid3(const Grid& grid, double tol, const Sides& sides) {
    const std::size_t m = grid.size();
    const unsigned workers = sweep_workers(m);
    const std::size_t chunk = (m + workers - 1) / workers;

    struct Partial {
        double max_residual = 0.0;
        std::optional<GridWitness> witness;
        std::exception_ptr error;
    };
    std::vector<Partial> parts(workers);

    auto run = [&](unsigned w) {
        Partial& part = parts[w];
        try {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(m, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) {
                const double lambda = grid[i];
                for (std::size_t j = 0; j < m; ++j) {
                    for (std::size_t k = 0; k < m; ++k) {
                        const auto [lhs, rhs] = sides(lambda, grid[j], grid[k]);
                        const double r = residual_of(lhs, rhs);
                        part.max_residual = std::max(part.max_residual, r);
                        if (r > tol && !part.witness) {
                            part.witness = GridWitness{lambda, grid[j], grid[k], lhs, rhs, r};
                        }
                    }
                }
            }
        } catch (...) {
            part.error = std::current_exception();
        }
    };

    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 1; w < workers; ++w) {
            threads.emplace_back(run, w);
        }
        run(0);
    }

    ResidualReport report;
    report.tol = tol;
    report.points = m * m * m;
    for (auto& part : parts) {
        if (part.error) {
            std::rethrow_exception(part.error);
        }
        report.max_residual = std::max(report.max_residual, part.max_residual);
        if (part.witness && !report.witness) {
            report.witness = part.witness;
        }
    }
    report.passed = !report.witness;
    return report;
}

}  // namespace qhagg::detail
