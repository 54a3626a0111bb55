#pragma once

#include <span>
#include <vector>

namespace dlab {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    int n = 0;
};

/// Least-squares slope of log|value| against the clock, over samples with
/// clock in [lo, hi]. Non-positive values inside the window and windows with
/// fewer than three samples are errors.
FitResult fit_decay_exponent(std::span<const double> clock, std::span<const double> value,
                             double lo, double hi);

/// Convenience overload fitting the whole series.
FitResult fit_decay_exponent(std::span<const double> clock, std::span<const double> value);

/// Spearman rank correlation. Values closer than `tie_rel_eps` times the data
/// range are treated as ties (rank-averaged), so machine-noise plateaus do
/// not acquire a spurious trend.
double spearman(std::span<const double> x, std::span<const double> y,
                double tie_rel_eps = 0.0);

}  // namespace dlab
