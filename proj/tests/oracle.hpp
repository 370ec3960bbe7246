#pragma once

// Brute-force reference used only by tests: evaluates propositions world by
// world through Proposition::evaluate and sums probabilities in index order.
// Shares nothing with the mask/kernel path beyond the probability table.

#include "belief/distribution.hpp"

#include <random>
#include <stdexcept>

namespace oracle {

inline bool holds(const belief::JointDistribution& d, const belief::Proposition& p, std::size_t world)
{
    return p.evaluate([&](const std::string& name) {
        for (std::size_t i = 0; i < d.atom_count(); ++i)
            if (d.atoms()[i] == name)
                return ((world >> i) & 1u) != 0;
        throw std::runtime_error("undeclared atom " + name);
    });
}

inline double mass(const belief::JointDistribution& d, const belief::Proposition& p)
{
    double total = 0.0;
    for (std::size_t w = 0; w < d.world_count(); ++w)
        if (holds(d, p, w))
            total += d.table()[w];
    return total;
}

inline double conditional(const belief::JointDistribution& d, const belief::Proposition& p,
                          const belief::Proposition& given)
{
    double joint = 0.0;
    double ctx = 0.0;
    for (std::size_t w = 0; w < d.world_count(); ++w)
        if (holds(d, given, w)) {
            ctx += d.table()[w];
            if (holds(d, p, w))
                joint += d.table()[w];
        }
    if (ctx == 0.0)
        throw std::runtime_error("oracle: impossible context");
    return joint / ctx;
}

inline double lambda(const belief::JointDistribution& d, const belief::Proposition& h,
                     const belief::Proposition& e, const belief::Proposition& ctx)
{
    return conditional(d, e, h & ctx) / conditional(d, e, (!h) & ctx);
}

inline double odds(double p) { return p / (1.0 - p); }

// Random formula over the given atoms, depth-limited.
inline belief::Proposition random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                                          int depth)
{
    using belief::Proposition;
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
    switch (pick(rng)) {
    case 0: {
        std::uniform_int_distribution<std::size_t> a(0, atoms.size() - 1);
        return Proposition::atom(atoms[a(rng)]);
    }
    case 1: return std::uniform_int_distribution<int>(0, 6)(rng) == 0
                       ? (rng() & 1 ? Proposition::truth() : Proposition::falsity())
                       : Proposition::atom(atoms[rng() % atoms.size()]);
    case 2: return !random_formula(rng, atoms, depth - 1);
    case 3:
    case 4: return random_formula(rng, atoms, depth - 1) & random_formula(rng, atoms, depth - 1);
    default: return random_formula(rng, atoms, depth - 1) | random_formula(rng, atoms, depth - 1);
    }
}

} // namespace oracle
