#include "belief/transforms.hpp"

#include "belief/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace belief {

MonotoneTransform::MonotoneTransform(std::vector<double> grid, std::vector<double> values,
                                     std::size_t anchor)
    : grid_(std::move(grid)), values_(std::move(values)), anchor_(anchor)
{
    if (grid_.size() < 2 || grid_.size() != values_.size())
        throw Error(ErrorCode::invalid_argument, "transform needs matching grid and values of length >= 2");
    if (anchor_ >= grid_.size())
        throw Error(ErrorCode::invalid_argument, "transform anchor out of range");
    for (std::size_t k = 1; k < grid_.size(); ++k) {
        if (!(grid_[k] > grid_[k - 1]))
            throw Error(ErrorCode::invalid_argument, "transform grid must be strictly increasing");
        if (!(values_[k] > values_[k - 1]))
            throw Error(ErrorCode::invalid_argument, "transform values must be strictly increasing");
    }
}

namespace {

struct Stencil {
    std::size_t lo;
    double w_lo;
    double w_hi;
};

// Interpolation weights of x on the grid; x must lie in the span.
Stencil stencil(std::span<const double> grid, double x)
{
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    if (hi >= grid.size())
        hi = grid.size() - 1;
    if (hi == 0)
        hi = 1;
    const std::size_t lo = hi - 1;
    const double t = (x - grid[lo]) / (grid[hi] - grid[lo]);
    return {lo, 1.0 - t, t};
}

} // namespace

double MonotoneTransform::operator()(double x) const
{
    if (!contains(x))
        throw Error(ErrorCode::out_of_grid, "transform evaluated outside its grid at " + std::to_string(x));
    const Stencil s = stencil(grid_, x);
    if (s.w_hi == 0.0)
        return values_[s.lo];
    if (s.w_lo == 0.0)
        return values_[s.lo + 1];
    return s.w_lo * values_[s.lo] + s.w_hi * values_[s.lo + 1];
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Lawson-Hanson active-set solver for min ||M x - b|| subject to x >= 0.
VectorXd nonnegative_least_squares(const MatrixXd& M, const VectorXd& b)
{
    const Eigen::Index n = M.cols();
    VectorXd x = VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double tol = 1e-13 * std::max(1.0, M.cwiseAbs().maxCoeff()) * static_cast<double>(M.rows());
    const int max_outer = static_cast<int>(3 * n) + 10;

    auto solve_passive = [&](VectorXd& z) {
        std::vector<Eigen::Index> cols;
        for (Eigen::Index j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)])
                cols.push_back(j);
        MatrixXd sub(M.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k)
            sub.col(static_cast<Eigen::Index>(k)) = M.col(cols[k]);
        const VectorXd zs = sub.colPivHouseholderQr().solve(b);
        z.setZero(n);
        for (std::size_t k = 0; k < cols.size(); ++k)
            z(cols[k]) = zs(static_cast<Eigen::Index>(k));
    };

    for (int outer = 0; outer < max_outer; ++outer) {
        const VectorXd w = M.transpose() * (b - M * x);
        Eigen::Index best = -1;
        for (Eigen::Index j = 0; j < n; ++j)
            if (!passive[static_cast<std::size_t>(j)] && w(j) > tol && (best < 0 || w(j) > w(best)))
                best = j;
        if (best < 0)
            break;
        passive[static_cast<std::size_t>(best)] = true;

        for (int inner = 0; inner < 3 * n + 10; ++inner) {
            VectorXd z;
            solve_passive(z);
            bool feasible = true;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0)
                    feasible = false;
            if (feasible) {
                x = z;
                break;
            }
            double step = 1.0;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0)
                    step = std::min(step, x(j) / (x(j) - z(j)));
            x += step * (z - x);
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
        }
    }
    return x;
}

double rms(const VectorXd& r)
{
    if (r.size() == 0)
        return 0.0;
    return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

} // namespace

AdditiveFit recover_additive_transform(std::span<const CombinationSample> samples,
                                       std::span<const double> grid,
                                       std::optional<std::size_t> anchor_opt)
{
    const std::size_t m = grid.size();
    if (m < 3)
        throw Error(ErrorCode::invalid_argument, "additive recovery needs a grid of at least 3 points");
    for (std::size_t k = 0; k < m; ++k)
        if (!std::isfinite(grid[k]) || (k > 0 && !(grid[k] > grid[k - 1])))
            throw Error(ErrorCode::invalid_argument, "grid must be finite and strictly increasing");
    const std::size_t anchor = anchor_opt.value_or(m - 1);
    if (anchor >= m)
        throw Error(ErrorCode::invalid_argument, "anchor index outside the grid");
    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (double v : {samples[s].x, samples[s].y, samples[s].g})
            if (!(v >= grid.front() && v <= grid.back()))
                throw Error(ErrorCode::out_of_grid,
                            "sample " + std::to_string(s) + " lies outside the grid span [" +
                                std::to_string(grid.front()) + ", " + std::to_string(grid.back()) + "]");
    }
    if (samples.size() < 3 * m)
        throw Error(ErrorCode::invalid_argument,
                    "additive recovery needs at least " + std::to_string(3 * m) + " samples, got " +
                        std::to_string(samples.size()));

    // Unknowns are the m-1 consecutive increments d; ordinates are
    // v = 1 + C d with C chosen so v[anchor] = 1.  Each residual row is
    // (phi(g) - phi(x) - phi(y)) . v = -1 + (row . C) d since every phi sums
    // to one.
    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(m - 1);
    MatrixXd M = MatrixXd::Zero(rows, cols);
    auto accumulate = [&](Eigen::Index row, std::size_t node, double w) {
        for (std::size_t i = anchor; i < node; ++i)
            M(row, static_cast<Eigen::Index>(i)) += w;
        for (std::size_t i = node; i < anchor; ++i)
            M(row, static_cast<Eigen::Index>(i)) -= w;
    };
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& s = samples[static_cast<std::size_t>(r)];
        const double sign[3] = {1.0, -1.0, -1.0};
        const double at[3] = {s.g, s.x, s.y};
        for (int t = 0; t < 3; ++t) {
            const Stencil st = stencil(grid, at[t]);
            accumulate(r, st.lo, sign[t] * st.w_lo);
            accumulate(r, st.lo + 1, sign[t] * st.w_hi);
        }
    }
    const VectorXd ones = VectorXd::Ones(rows);

    const VectorXd free_d = M.completeOrthogonalDecomposition().solve(ones);
    const double unconstrained = rms(M * free_d - ones);

    VectorXd d;
    if (free_d.minCoeff() >= kMonotoneMargin) {
        d = free_d; // already feasible, hence optimal for the constrained problem
    } else {
        const VectorXd margin = VectorXd::Constant(cols, kMonotoneMargin);
        d = margin + nonnegative_least_squares(M, ones - M * margin);
    }
    const double residual = rms(M * d - ones);
    if (residual > 10.0 * unconstrained + 1e-9)
        throw Error(ErrorCode::no_additive_representation,
                    "no additive representation: monotone fit residual " + std::to_string(residual) +
                        " vs unconstrained " + std::to_string(unconstrained));

    std::vector<double> values(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        double v = 1.0;
        for (std::size_t i = anchor; i < j; ++i)
            v += d(static_cast<Eigen::Index>(i));
        for (std::size_t i = j; i < anchor; ++i)
            v -= d(static_cast<Eigen::Index>(i));
        values[j] = v;
    }
    return {MonotoneTransform(std::vector<double>(grid.begin(), grid.end()), std::move(values), anchor),
            residual, unconstrained};
}

std::vector<double> log_spaced_grid(double lo, double hi, std::size_t points)
{
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw Error(ErrorCode::invalid_argument, "log grid needs 0 < lo < hi and at least 2 points");
    std::vector<double> g(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k)
        g[k] = lo * std::exp(step * static_cast<double>(k));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points)
{
    if (!(hi > lo) || points < 2)
        throw Error(ErrorCode::invalid_argument, "linear grid needs lo < hi and at least 2 points");
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k)
        g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    g.back() = hi;
    return g;
}

std::vector<double> default_grid(std::span<const CombinationSample> samples, std::size_t points)
{
    if (samples.empty())
        throw Error(ErrorCode::invalid_argument, "no samples to span");
    double lo = samples.front().x;
    double hi = lo;
    for (const auto& s : samples)
        for (double v : {s.x, s.y, s.g}) {
            if (!std::isfinite(v))
                throw Error(ErrorCode::invalid_argument, "non-finite sample value");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    return lo > 0.0 ? log_spaced_grid(lo, hi, points) : linear_grid(lo, hi, points);
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> samples)
{
    std::set<double> distinct;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto [x, j] = samples[k];
        if (!(x > 0.0) || !(j > 0.0) || !std::isfinite(x) || !std::isfinite(j))
            throw Error(ErrorCode::log_domain_violation,
                        "log-domain violation: sample " + std::to_string(k) + " is not positive");
        distinct.insert(x);
    }
    if (distinct.size() < 3)
        throw Error(ErrorCode::underdetermined, "underdetermined: power-law fit needs 3 distinct x");

    const double n = static_cast<double>(samples.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& [x, j] : samples) {
        mean_x += std::log(x);
        mean_y += std::log(j);
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, j] : samples) {
        const double dx = std::log(x) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(j) - mean_y);
    }
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    const double intercept = mean_y - fit.exponent * mean_x;
    fit.alpha = std::exp(intercept);
    double ss = 0.0;
    for (const auto& [x, j] : samples) {
        const double r = std::log(j) - (intercept + fit.exponent * std::log(x));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

} // namespace belief
