#pragma once

#include "belief/proposition.hpp"
#include "belief/world_mask.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace belief {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Nonnegative extended real p/(1-p); +inf exactly when p == 1.
class OddsValue {
public:
    constexpr OddsValue() = default;
    // Throws belief::Error (invalid_argument) for negative or NaN values.
    explicit OddsValue(double value);

    static OddsValue from_probability(double p);

    constexpr double value() const noexcept { return value_; }
    constexpr bool is_infinite() const noexcept { return value_ == kInfinity; }
    double probability() const noexcept;

    friend constexpr bool operator==(OddsValue, OddsValue) = default;

private:
    double value_ = 0.0;
};

struct ModelLimits {
    std::size_t atom_cap = 16;

    // Honors BELIEF_ATOM_CAP when set to a positive integer.
    static ModelLimits from_environment();
};

// Explicit probability table over all 2^n truth assignments.  Immutable.
class JointDistribution {
public:
    // Validates and renormalizes.  `table[w]` is the probability of world w
    // (bit i of w is the value of atoms[i]).  Throws belief::Error.
    static JointDistribution from_table(std::vector<std::string> atoms, std::vector<double> table,
                                        const ModelLimits& limits = {});

    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    std::size_t atom_count() const noexcept { return atoms_.size(); }
    std::size_t world_count() const noexcept { return table_.size(); }
    std::span<const double> table() const noexcept { return table_; }

    std::optional<std::size_t> atom_index(std::string_view name) const noexcept;

    // Worlds satisfying `p`.  Throws if `p` names an undeclared atom.
    WorldMask mask(const Proposition& p) const;
    double mass(const WorldMask& worlds) const noexcept;

    // Truth-table equivalence over this model's atoms.
    bool equivalent(const Proposition& a, const Proposition& b) const;

private:
    JointDistribution(std::vector<std::string> atoms, std::vector<double> table)
        : atoms_(std::move(atoms)), table_(std::move(table)) {}

    std::vector<std::string> atoms_;
    std::vector<double> table_;
};

// p(event | context).  Throws impossible_context when p(context) == 0.
double probability(const JointDistribution& d, const WorldMask& event, const WorldMask& context);
double probability(const JointDistribution& d, const Proposition& event,
                   const Proposition& context = Proposition::truth());

OddsValue odds(const JointDistribution& d, const WorldMask& h, const WorldMask& context);
OddsValue odds(const JointDistribution& d, const Proposition& h,
               const Proposition& context = Proposition::truth());

// E2 independent of E1 given H and given !H, all within context e.
bool conditionally_independent(const JointDistribution& d, const WorldMask& e2, const WorldMask& e1,
                               const WorldMask& h, const WorldMask& context, double tol);
bool conditionally_independent(const JointDistribution& d, const Proposition& e2,
                               const Proposition& e1, const Proposition& h,
                               const Proposition& context, double tol);

// Parses the JSON model document:
//   {"atoms": ["H","E"], "worlds": [{"assign": {"H": true, "E": false}, "p": 0.2}, ...]}
// Unlisted worlds get probability 0.
JointDistribution load_model(std::string_view document,
                             const ModelLimits& limits = ModelLimits::from_environment());
JointDistribution load_model_file(const std::string& path,
                                  const ModelLimits& limits = ModelLimits::from_environment());

inline constexpr double kNormalizationTolerance = 1e-9;

} // namespace belief
