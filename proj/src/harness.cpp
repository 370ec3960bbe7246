#include "belief/harness.hpp"

#include "belief/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

namespace belief {

JointDistribution ModelRef::load() const
{
    return ModelEnsemble{seed, atom_count, index + 1, scheme}.model(index);
}

namespace {

// One generated model with its literal and context masks precomputed.
// Contexts are TRUE followed by the literals.
struct ModelCase {
    ModelRef ref;
    JointDistribution dist;
    std::vector<Proposition> literal_props;
    std::vector<WorldMask> literal_masks;
    std::vector<Proposition> context_props;
    std::vector<WorldMask> context_masks;
};

std::vector<ModelCase> prepare(std::span<const ModelEnsemble> ensembles)
{
    std::vector<ModelCase> cases;
    for (const auto& ens : ensembles) {
        ens.validate();
        const auto lits = literals(ens.atom_names());
        for (std::size_t i = 0; i < ens.model_count; ++i) {
            ModelCase mc{{ens.scheme, ens.seed, ens.atom_count, i}, ens.model(i), lits, {}, {}, {}};
            for (const auto& p : lits)
                mc.literal_masks.push_back(mc.dist.mask(p));
            mc.context_props.push_back(Proposition::truth());
            mc.context_masks.push_back(WorldMask::all(ens.atom_count));
            for (std::size_t k = 0; k < lits.size(); ++k) {
                mc.context_props.push_back(lits[k]);
                mc.context_masks.push_back(mc.literal_masks[k]);
            }
            cases.push_back(std::move(mc));
        }
    }
    return cases;
}

std::optional<double> defined_value(const UpdateMeasure& m, const JointDistribution& d,
                                    const WorldMask& h, const WorldMask& evidence,
                                    const WorldMask& context)
{
    const auto v = m.try_evaluate(d, h, evidence, context);
    if (!v || !std::isfinite(*v))
        return std::nullopt;
    return v;
}

// Extended value, or nullopt when the measure is undefined.
std::optional<double> raw_value(const UpdateMeasure& m, const JointDistribution& d,
                                const Proposition& h, const Proposition& evidence,
                                const Proposition& context)
{
    return m.try_evaluate(d, d.mask(h), d.mask(evidence), d.mask(context));
}

// Where a sample came from: model case plus literal/context indices.
struct SampleRef {
    std::size_t model = 0;
    std::size_t h = 0;
    std::size_t context = 0;
    std::size_t e1 = 0;
    std::size_t e2 = 0;
};

struct Point {
    double a;
    double b;
    double out;
};

// A violation found before witnesses are materialized.  Witnesses are ranked
// by violation, ties broken by `order` so reports are reproducible.
struct Pending {
    double violation;
    std::tuple<int, std::size_t, std::size_t> order;
    std::function<Witness()> build;
};

class Findings {
public:
    void observe(double violation) { max_ = std::max(max_, violation); }

    void flag(double violation, std::tuple<int, std::size_t, std::size_t> order,
              std::function<Witness()> build)
    {
        observe(violation);
        pending_.push_back({violation, order, std::move(build)});
    }

    double max_violation() const { return max_; }

    std::vector<Witness> witnesses()
    {
        std::sort(pending_.begin(), pending_.end(), [](const Pending& x, const Pending& y) {
            if (x.violation != y.violation)
                return x.violation > y.violation;
            return x.order < y.order;
        });
        std::vector<Witness> out;
        for (std::size_t k = 0; k < pending_.size() && k < audit_limits::max_witnesses; ++k) {
            Witness w = pending_[k].build();
            w.violation = pending_[k].violation;
            out.push_back(std::move(w));
        }
        return out;
    }

private:
    double max_ = 0.0;
    std::vector<Pending> pending_;
};

std::int64_t cell_of(double v, double width)
{
    const double k = std::floor(v / width);
    return static_cast<std::int64_t>(std::clamp(k, -4.0e18, 4.0e18));
}

// Inputs within the key width must produce outputs within the output slack.
// Violations are reported in units of the slack.
void check_dependence(std::span<const Point> pts, int tag,
                      const std::function<Witness(std::size_t, std::size_t)>& pair_witness,
                      Findings& findings)
{
    constexpr double width = audit_limits::dependence_key_width;
    constexpr double slack = audit_limits::dependence_output_slack;
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < pts.size(); ++i)
        cells[{cell_of(pts[i].a, width), cell_of(pts[i].b, width)}].push_back(i);

    auto consider = [&](std::size_t i, std::size_t j) {
        const double v = std::abs(pts[i].out - pts[j].out) / slack;
        if (v > 1.0)
            findings.flag(v, {tag, std::min(i, j), std::max(i, j)},
                          [&pair_witness, i, j] { return pair_witness(i, j); });
        else
            findings.observe(v);
    };

    for (const auto& [key, members] : cells) {
        std::size_t lo = members.front();
        std::size_t hi = members.front();
        for (std::size_t i : members) {
            if (pts[i].out < pts[lo].out)
                lo = i;
            if (pts[i].out > pts[hi].out)
                hi = i;
        }
        consider(lo, hi);
        constexpr std::pair<int, int> neighbours[4] = {{1, -1}, {1, 0}, {1, 1}, {0, 1}};
        for (const auto& [dx, dy] : neighbours) {
            const auto it = cells.find({key.first + dx, key.second + dy});
            if (it == cells.end())
                continue;
            for (std::size_t i : members)
                for (std::size_t j : it->second)
                    if (std::abs(pts[i].a - pts[j].a) <= width && std::abs(pts[i].b - pts[j].b) <= width)
                        consider(i, j);
        }
    }
}

// Prefix-maximum Fenwick tree over ranks, remembering the arg max.
class MaxTree {
public:
    explicit MaxTree(std::size_t n) : value_(n + 1, -kInfinity), arg_(n + 1, 0) {}

    void insert(std::size_t rank, double v, std::size_t arg)
    {
        for (std::size_t k = rank + 1; k < value_.size(); k += k & (~k + 1))
            if (v > value_[k] || (v == value_[k] && arg < arg_[k])) {
                value_[k] = v;
                arg_[k] = arg;
            }
    }

    std::pair<double, std::size_t> query(std::size_t rank) const
    {
        double best = -kInfinity;
        std::size_t arg = 0;
        for (std::size_t k = rank + 1; k > 0; k -= k & (~k + 1))
            if (value_[k] > best || (value_[k] == best && arg_[k] < arg)) {
                best = value_[k];
                arg = arg_[k];
            }
        return {best, arg};
    }

private:
    std::vector<double> value_;
    std::vector<std::size_t> arg_;
};

// Within each group, any pair with a_i <= a_j and b_i <= b_j must satisfy
// out_i <= out_j + slack.
void check_dominance(std::span<const Point> pts, std::vector<std::size_t> group, int tag,
                     const std::function<Witness(std::size_t, std::size_t)>& pair_witness,
                     Findings& findings)
{
    constexpr double slack = audit_limits::monotone_slack;
    std::sort(group.begin(), group.end(), [&](std::size_t x, std::size_t y) {
        return std::tie(pts[x].a, pts[x].b, x) < std::tie(pts[y].a, pts[y].b, y);
    });
    std::vector<double> bs;
    for (std::size_t i : group)
        bs.push_back(pts[i].b);
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    auto rank_of = [&](double b) {
        return static_cast<std::size_t>(std::lower_bound(bs.begin(), bs.end(), b) - bs.begin());
    };

    MaxTree tree(bs.size());
    std::size_t start = 0;
    while (start < group.size()) {
        std::size_t end = start;
        while (end < group.size() && pts[group[end]].a == pts[group[start]].a)
            ++end;
        for (std::size_t k = start; k < end; ++k)
            tree.insert(rank_of(pts[group[k]].b), pts[group[k]].out, group[k]);
        for (std::size_t k = start; k < end; ++k) {
            const std::size_t j = group[k];
            const auto [best, i] = tree.query(rank_of(pts[j].b));
            if (i == j)
                continue;
            const double v = (best - pts[j].out) / slack;
            if (v > 1.0)
                findings.flag(v, {tag, i, j}, [&pair_witness, i = i, j] { return pair_witness(i, j); });
            else if (v > 0.0)
                findings.observe(v);
        }
        start = end;
    }
}

void check_monotone(std::span<const Point> pts,
                    const std::function<Witness(std::size_t, std::size_t)>& pair_witness,
                    Findings& findings)
{
    constexpr double width = audit_limits::bucket_width;
    std::map<std::int64_t, std::vector<std::size_t>> by_b;
    std::map<std::int64_t, std::vector<std::size_t>> by_a;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        by_b[cell_of(pts[i].b, width)].push_back(i);
        by_a[cell_of(pts[i].a, width)].push_back(i);
    }
    for (auto& [key, members] : by_b)
        check_dominance(pts, std::move(members), 1, pair_witness, findings);
    for (auto& [key, members] : by_a)
        check_dominance(pts, std::move(members), 2, pair_witness, findings);
}

Observation observe(const ModelCase& mc, const SampleRef& ref, std::vector<std::string> evidence,
                    std::vector<double> values)
{
    return {mc.ref, mc.literal_props[ref.h].to_string(), std::move(evidence),
            mc.context_props[ref.context].to_string(), std::move(values)};
}

void require_samples(std::size_t n, const char* check)
{
    if (n < audit_limits::min_samples)
        throw Error(ErrorCode::insufficient_samples,
                    std::string("insufficient samples for ") + check + ": " + std::to_string(n) +
                        " defined (need " + std::to_string(audit_limits::min_samples) + ")");
}

CheckResult finish(std::string name, std::size_t samples, std::size_t excluded, double tolerance,
                   Findings& findings)
{
    CheckResult r;
    r.check = std::move(name);
    r.samples = samples;
    r.excluded = excluded;
    r.tolerance = tolerance;
    r.max_violation = findings.max_violation();
    r.passed = r.max_violation <= tolerance;
    r.witnesses = findings.witnesses();
    return r;
}

} // namespace

CheckResult audit_definition(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles)
{
    const auto cases = prepare(ensembles);
    std::vector<Point> pts;
    std::vector<SampleRef> refs;
    std::size_t excluded = 0;
    for (std::size_t mi = 0; mi < cases.size(); ++mi) {
        const auto& mc = cases[mi];
        for (std::size_t h = 0; h < mc.literal_masks.size(); ++h)
            for (std::size_t c = 0; c < mc.context_masks.size(); ++c)
                for (std::size_t e = 0; e < mc.literal_masks.size(); ++e) {
                    const auto& hm = mc.literal_masks[h];
                    const auto& cm = mc.context_masks[c];
                    const auto& em = mc.literal_masks[e];
                    const auto u = defined_value(m, mc.dist, hm, em, cm);
                    if (!u) {
                        ++excluded;
                        continue;
                    }
                    pts.push_back({*u, probability(mc.dist, hm, cm), probability(mc.dist, hm, em & cm)});
                    refs.push_back({mi, h, c, e, 0});
                }
    }
    require_samples(pts.size(), kDefinitionCheck);

    auto one = [&](std::size_t i) {
        const auto& r = refs[i];
        const auto& mc = cases[r.model];
        return observe(mc, r, {mc.literal_props[r.e1].to_string()}, {pts[i].a, pts[i].b, pts[i].out});
    };
    const std::function<Witness(std::size_t, std::size_t)> pair = [&](std::size_t i, std::size_t j) {
        return Witness{0.0, {one(i), one(j)}};
    };
    Findings findings;
    check_dependence(pts, 0, pair, findings);
    check_monotone(pts, pair, findings);
    return finish(kDefinitionCheck, pts.size(), excluded, 1.0, findings);
}

CheckResult audit_combination(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles)
{
    const auto cases = prepare(ensembles);
    std::vector<Point> pts;
    std::vector<SampleRef> refs;
    std::size_t excluded = 0;
    for (std::size_t mi = 0; mi < cases.size(); ++mi) {
        const auto& mc = cases[mi];
        const std::size_t nl = mc.literal_masks.size();
        for (std::size_t h = 0; h < nl; ++h)
            for (std::size_t c = 0; c < mc.context_masks.size(); ++c)
                for (std::size_t e1 = 0; e1 < nl; ++e1) {
                    const auto& hm = mc.literal_masks[h];
                    const auto& cm = mc.context_masks[c];
                    const auto x = defined_value(m, mc.dist, hm, mc.literal_masks[e1], cm);
                    const WorldMask after_e1 = mc.literal_masks[e1] & cm;
                    for (std::size_t e2 = 0; e2 < nl; ++e2) {
                        if (!x) {
                            ++excluded;
                            continue;
                        }
                        const auto& e2m = mc.literal_masks[e2];
                        const auto y = defined_value(m, mc.dist, hm, e2m, after_e1);
                        const auto z = y ? defined_value(m, mc.dist, hm, mc.literal_masks[e1] & e2m, cm)
                                         : std::nullopt;
                        if (!z) {
                            ++excluded;
                            continue;
                        }
                        pts.push_back({*x, *y, *z});
                        refs.push_back({mi, h, c, e1, e2});
                    }
                }
    }
    require_samples(pts.size(), kCombinationCheck);

    auto one = [&](std::size_t i) {
        const auto& r = refs[i];
        const auto& mc = cases[r.model];
        return observe(mc, r, {mc.literal_props[r.e1].to_string(), mc.literal_props[r.e2].to_string()},
                       {pts[i].a, pts[i].b, pts[i].out});
    };
    const std::function<Witness(std::size_t, std::size_t)> pair = [&](std::size_t i, std::size_t j) {
        return Witness{0.0, {one(i), one(j)}};
    };
    Findings findings;
    check_dependence(pts, 0, pair, findings);
    check_monotone(pts, pair, findings);

    // Both bracketings of three-item evidence name the same proposition.
    std::size_t bracketings = 0;
    for (std::size_t mi = 0; mi < cases.size(); ++mi) {
        const auto& mc = cases[mi];
        const auto& lits = mc.literal_props;
        const Proposition context = Proposition::truth();
        for (std::size_t h = 0; h < lits.size(); ++h)
            for (std::size_t a = 0; a < lits.size(); ++a)
                for (std::size_t b = 0; b < lits.size(); ++b)
                    for (std::size_t c = 0; c < lits.size(); ++c) {
                        const Proposition left = (lits[a] & lits[b]) & lits[c];
                        const Proposition right = lits[a] & (lits[b] & lits[c]);
                        const auto u1 = raw_value(m, mc.dist, lits[h], left, context);
                        const auto u2 = raw_value(m, mc.dist, lits[h], right, context);
                        if (!u1 && !u2)
                            continue;
                        ++bracketings;
                        double v = kInfinity;
                        if (u1 && u2)
                            v = *u1 == *u2 ? 0.0
                                           : std::abs(*u1 - *u2) / std::max(1.0, std::abs(*u1)) /
                                                 audit_limits::associativity_slack;
                        if (!(v <= 1.0)) {
                            findings.flag(v, {3, mi, ((h * 64 + a) * 64 + b) * 64 + c}, [&, mi, h, left, right, u1, u2] {
                                const auto& mcase = cases[mi];
                                auto val = [](const std::optional<double>& u) {
                                    return u ? *u : std::nan("");
                                };
                                return Witness{0.0,
                                               {{mcase.ref, lits[h].to_string(), {left.to_string()}, "true", {val(u1)}},
                                                {mcase.ref, lits[h].to_string(), {right.to_string()}, "true", {val(u2)}}}};
                            });
                        } else {
                            findings.observe(v);
                        }
                    }
    }
    return finish(kCombinationCheck, pts.size() + bracketings, excluded, 1.0, findings);
}

CheckResult audit_consistency(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles)
{
    const auto cases = prepare(ensembles);
    std::size_t samples = 0;
    std::size_t excluded = 0;
    Findings findings;
    std::size_t serial = 0;

    for (std::size_t mi = 0; mi < cases.size(); ++mi) {
        const auto& mc = cases[mi];
        const auto& lits = mc.literal_props;
        auto compare = [&](const Proposition& h1, const Proposition& ev1, const Proposition& h2,
                           const Proposition& ev2, const Proposition& ctx) {
            const auto u1 = raw_value(m, mc.dist, h1, ev1, ctx);
            const auto u2 = raw_value(m, mc.dist, h2, ev2, ctx);
            ++serial;
            if (!u1 && !u2) {
                ++excluded;
                return;
            }
            ++samples;
            double v = kInfinity;
            if (u1 && u2)
                v = *u1 == *u2 ? 0.0 : std::abs(*u1 - *u2);
            if (v > 0.0 || std::isnan(v)) {
                findings.flag(std::isnan(v) ? kInfinity : v, {4, serial, 0}, [&mc, h1, ev1, h2, ev2, ctx, u1, u2] {
                    auto val = [](const std::optional<double>& u) { return u ? *u : std::nan(""); };
                    return Witness{0.0,
                                   {{mc.ref, h1.to_string(), {ev1.to_string()}, ctx.to_string(), {val(u1)}},
                                    {mc.ref, h2.to_string(), {ev2.to_string()}, ctx.to_string(), {val(u2)}}}};
                });
            }
        };
        for (std::size_t h = 0; h < lits.size(); ++h)
            for (std::size_t c = 0; c < mc.context_props.size(); ++c) {
                const auto& ctx = mc.context_props[c];
                for (std::size_t e1 = 0; e1 < lits.size(); ++e1) {
                    compare(lits[h], lits[e1], lits[h], !!lits[e1], ctx);
                    compare(lits[h], lits[e1], lits[h] & Proposition::truth(), lits[e1], ctx);
                    for (std::size_t e2 = 0; e2 < lits.size(); ++e2)
                        compare(lits[h], lits[e1] & lits[e2], lits[h], lits[e2] & lits[e1], ctx);
                }
            }
    }
    require_samples(samples, kConsistencyCheck);
    return finish(kConsistencyCheck, samples, excluded, 0.0, findings);
}

CheckResult audit_independence_correspondence(const UpdateMeasure& m,
                                              std::span<const ModelEnsemble> ensembles)
{
    const auto cases = prepare(ensembles);
    std::size_t pairs = 0;
    std::size_t samples = 0;
    std::size_t excluded = 0;
    Findings findings;
    for (std::size_t mi = 0; mi < cases.size(); ++mi) {
        const auto& mc = cases[mi];
        const std::size_t nl = mc.literal_masks.size();
        for (std::size_t h = 0; h < nl; ++h)
            for (std::size_t c = 0; c < mc.context_masks.size(); ++c)
                for (std::size_t e1 = 0; e1 < nl; ++e1)
                    for (std::size_t e2 = 0; e2 < nl; ++e2) {
                        const auto& hm = mc.literal_masks[h];
                        const auto& cm = mc.context_masks[c];
                        const auto& e1m = mc.literal_masks[e1];
                        const auto& e2m = mc.literal_masks[e2];
                        // The E1 contexts are the smaller ones; if they are realizable so are the others.
                        const WorldMask e1_context = e1m & cm;
                        if (mc.dist.mass(hm & e1_context) <= 0.0 || mc.dist.mass(~hm & e1_context) <= 0.0)
                            continue;
                        if (!conditionally_independent(mc.dist, e2m, e1m, hm, cm,
                                                       audit_limits::independence_tolerance))
                            continue;
                        ++pairs;
                        const auto after = defined_value(m, mc.dist, hm, e2m, e1m & cm);
                        const auto before = defined_value(m, mc.dist, hm, e2m, cm);
                        if (!after || !before) {
                            ++excluded;
                            continue;
                        }
                        ++samples;
                        const double v = std::abs(*after - *before) / std::max(1.0, std::abs(*before));
                        if (v > audit_limits::correspondence_tolerance) {
                            const SampleRef ref{mi, h, c, e1, e2};
                            findings.flag(v, {5, mi, ((h * 64 + c) * 64 + e1) * 64 + e2},
                                          [&mc, ref, after = *after, before = *before] {
                                              return Witness{0.0,
                                                             {observe(mc, ref,
                                                                      {mc.literal_props[ref.e1].to_string(),
                                                                       mc.literal_props[ref.e2].to_string()},
                                                                      {after, before})}};
                                          });
                        } else {
                            findings.observe(v);
                        }
                    }
    }
    if (pairs == 0)
        throw Error(ErrorCode::vacuous_audit,
                    "vacuous audit: no conditionally independent evidence pairs in the ensemble");
    return finish(kCorrespondenceCheck, samples, excluded, audit_limits::correspondence_tolerance,
                  findings);
}

CheckResult audit_definition(const UpdateMeasure& m, const ModelEnsemble& ensemble)
{
    return audit_definition(m, std::span<const ModelEnsemble>(&ensemble, 1));
}

CheckResult audit_combination(const UpdateMeasure& m, const ModelEnsemble& ensemble)
{
    return audit_combination(m, std::span<const ModelEnsemble>(&ensemble, 1));
}

CheckResult audit_consistency(const UpdateMeasure& m, const ModelEnsemble& ensemble)
{
    return audit_consistency(m, std::span<const ModelEnsemble>(&ensemble, 1));
}

CheckResult audit_independence_correspondence(const UpdateMeasure& m, const ModelEnsemble& ensemble)
{
    return audit_independence_correspondence(m, std::span<const ModelEnsemble>(&ensemble, 1));
}

std::vector<CheckResult> run_all_audits(const UpdateMeasure& m,
                                        std::span<const ModelEnsemble> ensembles)
{
    return {audit_definition(m, ensembles), audit_combination(m, ensembles),
            audit_consistency(m, ensembles), audit_independence_correspondence(m, ensembles)};
}

namespace {

bool positive_valued(const UpdateMeasure& m)
{
    switch (m.kind()) {
    case MeasureKind::likelihood_ratio:
    case MeasureKind::posterior_ratio: return true;
    case MeasureKind::power_transform: return positive_valued(m.base());
    default: return false;
    }
}

} // namespace

bool expected_to_pass(const UpdateMeasure& m, const std::string& check)
{
    switch (m.kind()) {
    case MeasureKind::likelihood_ratio:
    case MeasureKind::log_likelihood_ratio: return true;
    case MeasureKind::posterior_ratio:
    case MeasureKind::probability_difference: return check != kCorrespondenceCheck;
    case MeasureKind::power_transform:
        if (check == kConsistencyCheck)
            return true;
        if (check == kCorrespondenceCheck)
            return expected_to_pass(m.base(), check);
        if (check == kCombinationCheck)
            return (m.exponent() > 0.0 || positive_valued(m.base())) && expected_to_pass(m.base(), check);
        return m.exponent() > 0.0 && expected_to_pass(m.base(), check);
    }
    return false;
}

} // namespace belief
