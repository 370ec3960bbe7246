#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace belief {

// Strictly increasing piecewise-linear function on a grid.  The anchor is the
// grid index whose value was fixed to 1 when the transform was fitted.
class MonotoneTransform {
public:
    // Throws invalid_argument unless both lists are strictly increasing, of
    // equal length >= 2, and the anchor indexes into them.
    MonotoneTransform(std::vector<double> grid, std::vector<double> values, std::size_t anchor);

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t anchor() const noexcept { return anchor_; }

    bool contains(double x) const noexcept { return x >= grid_.front() && x <= grid_.back(); }
    // Linear interpolation.  Throws out_of_grid outside [grid.front, grid.back].
    double operator()(double x) const;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
    std::size_t anchor_;
};

struct CombinationSample {
    double x;
    double y;
    double g; // g(x, y)
};

struct AdditiveFit {
    MonotoneTransform transform;
    // Root-mean-square of h(g) - h(x) - h(y) over the samples.
    double residual;
    // Same objective with only the anchor constraint (monotonicity dropped).
    double unconstrained_residual;
};

// Strict-monotonicity margin between consecutive fitted ordinates.
inline constexpr double kMonotoneMargin = 1e-9;

// Finds the piecewise-linear h on `grid` minimizing
// sum (h(g) - h(x) - h(y))^2 subject to h increasing by at least the margin
// per grid step and h(grid[anchor]) = 1.  The anchor defaults to the last
// grid point.
//
// Throws out_of_grid for a sample outside the grid span (the message names
// the sample index), invalid_argument for fewer than 3 * grid.size()
// samples, and no_additive_representation when the monotone fit is more
// than ten times worse than the unconstrained one.
AdditiveFit recover_additive_transform(std::span<const CombinationSample> samples,
                                       std::span<const double> grid,
                                       std::optional<std::size_t> anchor = std::nullopt);

std::vector<double> log_spaced_grid(double lo, double hi, std::size_t points);
std::vector<double> linear_grid(double lo, double hi, std::size_t points);
// Default grid for a sample set: 64 points spanning every x, y and g,
// log-spaced when all are positive and evenly spaced otherwise.
std::vector<double> default_grid(std::span<const CombinationSample> samples,
                                 std::size_t points = 64);

struct PowerLawFit {
    double alpha = 1.0;
    double exponent = 1.0;
    double residual = 0.0; // RMS in log space
};

// Least-squares fit of log j = log alpha + A log x.  Throws
// log_domain_violation for nonpositive data and underdetermined for fewer
// than three distinct x.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples);

} // namespace belief
