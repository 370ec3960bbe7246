#include "belief/classify.hpp"

#include "belief/error.hpp"

#include <algorithm>
#include <cmath>

namespace belief {

std::string_view verdict_name(Verdict v) noexcept
{
    switch (v) {
    case Verdict::transform_of_lambda: return "transform_of_lambda";
    case Verdict::update_but_not_lambda: return "update_but_not_lambda";
    case Verdict::not_an_update: return "not_an_update";
    }
    return "not_an_update";
}

namespace {

struct Paired {
    double lambda;
    double u;
};

template <class F>
void for_each_triple(std::span<const ModelEnsemble> ensembles, F&& visit)
{
    for (const auto& ens : ensembles) {
        const auto lits = literals(ens.atom_names());
        for (std::size_t i = 0; i < ens.model_count; ++i) {
            const auto d = ens.model(i);
            std::vector<WorldMask> masks;
            for (const auto& p : lits)
                masks.push_back(d.mask(p));
            std::vector<WorldMask> contexts{WorldMask::all(ens.atom_count)};
            contexts.insert(contexts.end(), masks.begin(), masks.end());
            visit(d, masks, contexts);
        }
    }
}

std::optional<double> finite_value(const UpdateMeasure& m, const JointDistribution& d,
                                   const WorldMask& h, const WorldMask& ev, const WorldMask& ctx)
{
    const auto v = m.try_evaluate(d, h, ev, ctx);
    return v && std::isfinite(*v) ? v : std::nullopt;
}

std::vector<Paired> paired_with_lambda(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles)
{
    const auto lambda = UpdateMeasure::likelihood_ratio();
    std::vector<Paired> out;
    for_each_triple(ensembles, [&](const JointDistribution& d, const std::vector<WorldMask>& lits,
                                   const std::vector<WorldMask>& contexts) {
        for (const auto& h : lits)
            for (const auto& c : contexts)
                for (const auto& e : lits) {
                    const auto l = finite_value(lambda, d, h, e, c);
                    if (!l || *l <= 0.0)
                        continue;
                    const auto u = finite_value(m, d, h, e, c);
                    if (u)
                        out.push_back({*l, *u});
                }
    });
    return out;
}

std::vector<CombinationSample> combination_samples(const UpdateMeasure& m,
                                                   std::span<const ModelEnsemble> ensembles)
{
    std::vector<CombinationSample> all;
    for_each_triple(ensembles, [&](const JointDistribution& d, const std::vector<WorldMask>& lits,
                                   const std::vector<WorldMask>& contexts) {
        for (const auto& h : lits)
            for (const auto& c : contexts)
                for (const auto& e1 : lits) {
                    const auto x = finite_value(m, d, h, e1, c);
                    if (!x)
                        continue;
                    const WorldMask after = e1 & c;
                    for (const auto& e2 : lits) {
                        const auto y = finite_value(m, d, h, e2, after);
                        if (!y)
                            continue;
                        const auto z = finite_value(m, d, h, e1 & e2, c);
                        if (z)
                            all.push_back({*x, *y, *z});
                    }
                }
    });
    if (all.size() <= kRecoverySampleCap)
        return all;
    std::vector<CombinationSample> thinned;
    const double stride = static_cast<double>(all.size()) / static_cast<double>(kRecoverySampleCap);
    for (std::size_t k = 0; k < kRecoverySampleCap; ++k)
        thinned.push_back(all[static_cast<std::size_t>(static_cast<double>(k) * stride)]);
    return thinned;
}

// Nodes at evenly spaced quantiles of every x, y and g, so each interval is
// supported by samples.  Nodes closer than 1e-6 of the span are merged.
std::vector<double> quantile_grid(std::span<const CombinationSample> samples, std::size_t points)
{
    std::vector<double> v;
    for (const auto& s : samples)
        v.insert(v.end(), {s.x, s.y, s.g});
    if (v.empty())
        throw Error(ErrorCode::underdetermined, "no combination samples for additive recovery");
    std::sort(v.begin(), v.end());
    const double min_gap = 1e-6 * (v.back() - v.front());
    std::vector<double> grid;
    for (std::size_t k = 0; k < points; ++k) {
        const auto at = static_cast<std::size_t>(
            std::llround(static_cast<double>(k) * static_cast<double>(v.size() - 1) / static_cast<double>(points - 1)));
        if (grid.empty() || v[at] - grid.back() > min_gap)
            grid.push_back(v[at]);
    }
    if (grid.back() != v.back()) {
        if (grid.size() > 1)
            grid.pop_back();
        grid.push_back(v.back());
    }
    if (grid.size() < 3)
        throw Error(ErrorCode::underdetermined, "combination samples span too few distinct values");
    return grid;
}

// Ordinary least squares y = slope * x + intercept; returns RMS residual.
double affine_residual(const std::vector<std::pair<double, double>>& xy)
{
    const double n = static_cast<double>(xy.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double ss = 0.0;
    for (const auto& [x, y] : xy) {
        const double r = y - (my + slope * (x - mx));
        ss += r * r;
    }
    return std::sqrt(ss / n);
}

void relate_to_lambda(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles,
                      Classification& out)
{
    const auto pairs = paired_with_lambda(m, ensembles);
    const bool positive = !pairs.empty() &&
                          std::all_of(pairs.begin(), pairs.end(), [](const Paired& p) { return p.u > 0.0; });
    try {
        if (positive) {
            out.route = "log-log";
            std::vector<std::pair<double, double>> xy;
            for (const auto& p : pairs)
                xy.emplace_back(p.lambda, p.u);
            const PowerLawFit fit = fit_power_law(xy);
            out.fit_residual = fit.residual;
            out.A_estimate = fit.exponent;
            if (fit.residual <= kClassificationResidual) {
                out.verdict = Verdict::transform_of_lambda;
            } else {
                out.verdict = Verdict::update_but_not_lambda;
                out.diagnostic = "log U is not affine in log lambda (residual " +
                                 std::to_string(fit.residual) + ")";
            }
            return;
        }

        out.route = "additive-recovery";
        const auto samples = combination_samples(m, ensembles);
        const auto grid = quantile_grid(samples, 64);
        const AdditiveFit fit = recover_additive_transform(samples, grid);
        std::vector<std::pair<double, double>> xy;
        for (const auto& p : pairs)
            if (fit.transform.contains(p.u))
                xy.emplace_back(std::log(p.lambda), fit.transform(p.u));
        if (xy.size() < 3)
            throw Error(ErrorCode::underdetermined, "too few samples inside the recovered transform's grid");
        const double residual = std::max(affine_residual(xy), fit.residual);
        out.fit_residual = residual;
        if (residual <= kClassificationResidual) {
            out.verdict = Verdict::transform_of_lambda;
        } else {
            out.verdict = Verdict::update_but_not_lambda;
            out.diagnostic = "h(U) is not affine in log lambda (residual " + std::to_string(residual) + ")";
        }
    } catch (const Error& err) {
        if (err.category() != ErrorCategory::computation)
            throw;
        out.verdict = Verdict::update_but_not_lambda;
        out.diagnostic = std::string("fit failed: ") + err.what();
    }
}

} // namespace

Classification classify_measure(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles)
{
    const auto has = [&](Scheme s) {
        return std::any_of(ensembles.begin(), ensembles.end(),
                           [s](const ModelEnsemble& e) { return e.scheme == s; });
    };
    if (!has(Scheme::factored_conditionally_independent) || !has(Scheme::dependent_adversarial))
        throw Error(ErrorCode::invalid_argument,
                    "classification needs factored and adversarial ensembles");

    Classification out;
    out.measure = m.name();
    out.checks = run_all_audits(m, ensembles);
    out.is_update = out.checks[0].passed && out.checks[1].passed && out.checks[2].passed;
    out.satisfies_correspondence = out.checks[3].passed;
    out.route = "none";

    if (!out.is_update) {
        out.verdict = Verdict::not_an_update;
        out.diagnostic = "failed the update-definition, combination or consistency audit";
    } else if (!out.satisfies_correspondence) {
        out.verdict = Verdict::update_but_not_lambda;
        out.diagnostic = "not modular under conditional independence";
    } else {
        relate_to_lambda(m, ensembles, out);
    }
    return out;
}

} // namespace belief
