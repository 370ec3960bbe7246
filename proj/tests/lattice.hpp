#pragma once

#include "belief/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lattice {

// Nodes 2^((k + lo) / 16) for k = 0 .. count-1, shifted by `offset`.
inline std::vector<double> binary_grid(int lo, int count, double offset = 0.0)
{
    std::vector<double> g;
    for (int k = 0; k < count; ++k)
        g.push_back(std::exp2(static_cast<double>(k + lo) / 16.0) + offset);
    return g;
}

// Pairs (x, y) of nodes whose product lands on a node: samples of x * y on
// binary_grid(lo, count).
inline std::vector<belief::CombinationSample> multiplication_samples(int lo, int count)
{
    const auto g = binary_grid(lo, count);
    std::vector<belief::CombinationSample> out;
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            const int c = a + b + lo;
            if (c >= 0 && c < count)
                out.push_back({g[static_cast<std::size_t>(a)], g[static_cast<std::size_t>(b)],
                               g[static_cast<std::size_t>(c)]});
        }
    return out;
}

// Samples of x + y + xy on nodes 2^(k/16) - 1, k = 1 .. count.
inline std::vector<belief::CombinationSample> shifted_product_samples(int count)
{
    const auto g = binary_grid(1, count, -1.0);
    std::vector<belief::CombinationSample> out;
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            const int c = a + b + 1;
            if (c < count)
                out.push_back({g[static_cast<std::size_t>(a)], g[static_cast<std::size_t>(b)],
                               g[static_cast<std::size_t>(c)]});
        }
    return out;
}

// max |h - ref| / max |ref| with ref = f scaled to equal h at the anchor.
template <class F>
double scaled_deviation(const belief::MonotoneTransform& h, F&& f)
{
    const double scale = h.values()[h.anchor()] / f(h.grid()[h.anchor()]);
    double worst = 0.0;
    double norm = 0.0;
    for (std::size_t k = 0; k < h.grid().size(); ++k) {
        const double ref = scale * f(h.grid()[k]);
        worst = std::max(worst, std::abs(h.values()[k] - ref));
        norm = std::max(norm, std::abs(ref));
    }
    return worst / norm;
}

} // namespace lattice
