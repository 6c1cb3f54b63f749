#include "qwalk/analysis.hpp"

#include <cmath>
#include <numbers>

#include "qwalk/dtqw.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

ScalingFit fit_scaling_exponent(std::vector<std::pair<int, double>> samples) {
    if (samples.size() < 4)
        throw DegenerateInput("fit_scaling_exponent: need at least 4 samples");
    for (const auto& [steps, variance] : samples) {
        if (steps < 2)
            throw DegenerateInput("fit_scaling_exponent: step counts must be >= 2");
        if (!(variance > 0.0))
            throw DegenerateInput("fit_scaling_exponent: variances must be positive");
    }

    const std::size_t m = samples.size();
    double sx = 0.0, sy = 0.0;
    for (const auto& [steps, variance] : samples) {
        sx += std::log(static_cast<double>(steps));
        sy += std::log(variance);
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [steps, variance] : samples) {
        const double dx = std::log(static_cast<double>(steps)) - mx;
        const double dy = std::log(variance) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        throw DegenerateInput("fit_scaling_exponent: step counts must not all coincide");

    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& [steps, variance] : samples) {
        const double r = std::log(variance) -
                         (fit.intercept + fit.slope * std::log(static_cast<double>(steps)));
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.samples = std::move(samples);
    return fit;
}

std::vector<VarianceLawRow> verify_variance_law(const std::vector<double>& thetas, int steps) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (thetas.empty())
        throw DegenerateInput("verify_variance_law: need at least one theta");
    for (double theta : thetas)
        if (!(theta > 0.0) || !(theta < half_pi))
            throw DegenerateInput("verify_variance_law: thetas must lie in (0, pi/2)");
    if (steps < 1) throw DegenerateInput("verify_variance_law: steps must be >= 1");

    std::vector<VarianceLawRow> rows;
    rows.reserve(thetas.size());
    const Lattice lattice(steps + 1, Boundary::Guarded);
    const WalkState init =
        initial_particle_state(std::numbers::pi / 4.0, half_pi, lattice);
    for (double theta : thetas) {
        const WalkState final_state =
            dtqw_evolve(init, CoinParams{0.0, theta, 0.0}, steps);
        const double measured = measure_position(final_state).variance();
        const double predicted = variance_prediction(theta, steps);
        rows.push_back({theta, measured, predicted,
                        std::abs(measured - predicted) / predicted});
    }
    return rows;
}

}  // namespace qwalk
