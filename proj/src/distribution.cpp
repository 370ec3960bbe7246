#include "belief/distribution.hpp"

#include "belief/error.hpp"
#include "belief/kernels.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>

namespace belief {

OddsValue::OddsValue(double value) : value_(value)
{
    if (!(value >= 0.0))
        throw Error(ErrorCode::invalid_argument, "odds must be nonnegative");
}

OddsValue OddsValue::from_probability(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorCode::invalid_argument, "probability outside [0, 1]");
    if (p == 1.0)
        return OddsValue(kInfinity);
    return OddsValue(p / (1.0 - p));
}

double OddsValue::probability() const noexcept
{
    if (is_infinite())
        return 1.0;
    return value_ / (1.0 + value_);
}

ModelLimits ModelLimits::from_environment()
{
    ModelLimits limits;
    if (const char* env = std::getenv("BELIEF_ATOM_CAP")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 30)
            limits.atom_cap = static_cast<std::size_t>(v);
    }
    return limits;
}

JointDistribution JointDistribution::from_table(std::vector<std::string> atoms,
                                                std::vector<double> table,
                                                const ModelLimits& limits)
{
    if (atoms.size() > limits.atom_cap)
        throw Error(ErrorCode::invalid_model,
                    "model declares " + std::to_string(atoms.size()) + " atoms; cap is " +
                        std::to_string(limits.atom_cap));
    std::set<std::string> seen;
    for (const auto& name : atoms) {
        const bool ident = !name.empty() &&
                           (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
        bool body_ok = ident;
        for (char c : name)
            body_ok = body_ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!body_ok || name == "true" || name == "false")
            throw Error(ErrorCode::invalid_model, "invalid atom name \"" + name + "\"");
        if (!seen.insert(name).second)
            throw Error(ErrorCode::invalid_model, "duplicate atom \"" + name + "\"");
    }
    const std::size_t worlds = std::size_t{1} << atoms.size();
    if (table.size() != worlds)
        throw Error(ErrorCode::invalid_model, "table has " + std::to_string(table.size()) +
                                                  " entries; expected " + std::to_string(worlds));
    for (std::size_t w = 0; w < worlds; ++w) {
        if (!std::isfinite(table[w]) || table[w] < 0.0)
            throw Error(ErrorCode::invalid_model,
                        "negative or non-finite probability at world " + std::to_string(w));
    }
    const WorldMask everything = WorldMask::all(atoms.size());
    const double total = kernels::masked_sum(table, everything.words());
    if (total < 1.0 - kNormalizationTolerance)
        throw Error(ErrorCode::mass_deficit,
                    "mass deficit: probabilities sum to " + std::to_string(total));
    if (total > 1.0 + kNormalizationTolerance)
        throw Error(ErrorCode::mass_excess,
                    "mass excess: probabilities sum to " + std::to_string(total));
    for (auto& p : table)
        p /= total;
    return JointDistribution(std::move(atoms), std::move(table));
}

std::optional<std::size_t> JointDistribution::atom_index(std::string_view name) const noexcept
{
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i] == name)
            return i;
    return std::nullopt;
}

WorldMask JointDistribution::mask(const Proposition& p) const
{
    const std::size_t n = atoms_.size();
    switch (p.kind()) {
    case Proposition::Kind::constant:
        return p.constant_value() ? WorldMask::all(n) : WorldMask::none(n);
    case Proposition::Kind::atom: {
        const auto idx = atom_index(p.atom_name());
        if (!idx)
            throw Error(ErrorCode::invalid_argument,
                        "undeclared atom \"" + p.atom_name() + "\" in proposition");
        return WorldMask::atom(n, *idx);
    }
    case Proposition::Kind::negation: return ~mask(p.operand());
    case Proposition::Kind::conjunction: return mask(p.left()) & mask(p.right());
    case Proposition::Kind::disjunction: return mask(p.left()) | mask(p.right());
    }
    return WorldMask::none(n);
}

double JointDistribution::mass(const WorldMask& worlds) const noexcept
{
    return kernels::masked_sum(table_, worlds.words());
}

bool JointDistribution::equivalent(const Proposition& a, const Proposition& b) const
{
    return mask(a) == mask(b);
}

double probability(const JointDistribution& d, const WorldMask& event, const WorldMask& context)
{
    const auto sums = kernels::conditional_sums(d.table(), event.words(), context.words());
    if (sums.context <= 0.0)
        throw Error(ErrorCode::impossible_context, "impossible context: conditioning event has probability 0");
    // Subset sums never exceed the superset sum (rounded addition is monotone).
    return sums.joint / sums.context;
}

double probability(const JointDistribution& d, const Proposition& event, const Proposition& context)
{
    try {
        return probability(d, d.mask(event), d.mask(context));
    } catch (const Error& err) {
        if (err.code() != ErrorCode::impossible_context)
            throw;
        throw Error(ErrorCode::impossible_context,
                    "impossible context: p(" + context.to_string() + ") = 0");
    }
}

OddsValue odds(const JointDistribution& d, const WorldMask& h, const WorldMask& context)
{
    return OddsValue::from_probability(probability(d, h, context));
}

OddsValue odds(const JointDistribution& d, const Proposition& h, const Proposition& context)
{
    return OddsValue::from_probability(probability(d, h, context));
}

bool conditionally_independent(const JointDistribution& d, const WorldMask& e2, const WorldMask& e1,
                               const WorldMask& h, const WorldMask& context, double tol)
{
    const WorldMask not_h = ~h;
    const WorldMask h_e = h & context;
    const WorldMask nh_e = not_h & context;
    const WorldMask h_e1_e = h_e & e1;
    const WorldMask nh_e1_e = nh_e & e1;

    struct Ctx {
        const WorldMask* worlds;
        const char* label;
    };
    const Ctx contexts[4] = {{&h_e1_e, "H & E1 & e"},
                             {&h_e, "H & e"},
                             {&nh_e1_e, "!H & E1 & e"},
                             {&nh_e, "!H & e"}};
    double p[4];
    for (int k = 0; k < 4; ++k) {
        const auto sums = kernels::conditional_sums(d.table(), e2.words(), contexts[k].worlds->words());
        if (sums.context <= 0.0)
            throw Error(ErrorCode::impossible_context, std::string("impossible context: ") +
                                                           contexts[k].label + " has probability 0");
        p[k] = sums.joint / sums.context;
    }
    return std::abs(p[0] - p[1]) <= tol && std::abs(p[2] - p[3]) <= tol;
}

bool conditionally_independent(const JointDistribution& d, const Proposition& e2,
                               const Proposition& e1, const Proposition& h,
                               const Proposition& context, double tol)
{
    return conditionally_independent(d, d.mask(e2), d.mask(e1), d.mask(h), d.mask(context), tol);
}

} // namespace belief
