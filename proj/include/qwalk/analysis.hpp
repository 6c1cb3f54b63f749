#pragma once

#include <utility>
#include <vector>

namespace qwalk {

/// Ordinary least squares of log(variance) against log(steps).
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<int, double>> samples;
};

/// Throws DegenerateInput for fewer than 4 samples, any step count < 2, or
/// any variance <= 0.
ScalingFit fit_scaling_exponent(std::vector<std::pair<int, double>> samples);

struct VarianceLawRow {
    double theta;
    double measured;
    double predicted;
    double relative_error;
};

/// Runs the symmetric-start walk (delta = pi/4, eta = pi/2) with coin
/// (0, theta, 0) for each theta and compares the measured position variance
/// with variance_prediction. Thetas must lie strictly inside (0, pi/2) so the
/// prediction is positive.
std::vector<VarianceLawRow> verify_variance_law(const std::vector<double>& thetas,
                                                int steps);

}  // namespace qwalk
