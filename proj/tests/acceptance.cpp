// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "belief/calculus.hpp"
#include "belief/classify.hpp"
#include "belief/error.hpp"
#include "belief/harness.hpp"
#include "belief/measures.hpp"
#include "belief/transforms.hpp"

#include "lattice.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>

using namespace belief;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double budget_seconds, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0.0 && elapsed > budget_seconds) {
        o.passed = false;
        o.detail += "; over time budget";
    }
    if (!o.passed)
        ++failures;
    std::printf("[%s] criterion %d: %s (%s; %.2f s", o.passed ? "PASS" : "FAIL", number, title, o.detail.c_str(),
                elapsed);
    if (budget_seconds > 0.0)
        std::printf(" of %.0f s", budget_seconds);
    std::printf(")\n");
    std::fflush(stdout);
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 500 dense models on three atoms and 500 on four.
std::vector<ModelEnsemble> dense_thousand()
{
    return {{1001, 3, 500, Scheme::dense_random}, {1002, 4, 500, Scheme::dense_random}};
}

// Visits every (H, E, e) with H, E literals and e TRUE or a literal.
template <class F>
void for_each_model(const std::vector<ModelEnsemble>& ensembles, F&& visit)
{
    for (const auto& ens : ensembles) {
        const auto lits = literals(ens.atom_names());
        for (std::size_t i = 0; i < ens.model_count; ++i) {
            const auto d = ens.model(i);
            std::vector<WorldMask> masks;
            for (const auto& p : lits)
                masks.push_back(d.mask(p));
            std::vector<WorldMask> contexts{WorldMask::all(d.atom_count())};
            contexts.insert(contexts.end(), masks.begin(), masks.end());
            visit(d, masks, contexts);
        }
    }
}

bool nonextreme(const JointDistribution& d, const WorldMask& h, const WorldMask& ctx)
{
    return d.mass(h & ctx) > 0.0 && d.mass(~h & ctx) > 0.0;
}

std::optional<double> finite_lambda(const JointDistribution& d, const WorldMask& h, const WorldMask& e,
                                    const WorldMask& ctx)
{
    if (!nonextreme(d, h, ctx) || d.mass(e & ctx) == 0.0)
        return std::nullopt;
    try {
        const double l = likelihood_ratio(d, h, e, ctx);
        if (std::isfinite(l))
            return l;
    } catch (const Error&) {
    }
    return std::nullopt;
}

Outcome bayes_odds()
{
    double worst = 0.0;
    std::size_t n = 0;
    for_each_model(dense_thousand(), [&](const JointDistribution& d, const std::vector<WorldMask>& lits,
                                         const std::vector<WorldMask>& contexts) {
        for (const auto& h : lits)
            for (const auto& c : contexts)
                for (const auto& e : lits) {
                    const auto l = finite_lambda(d, h, e, c);
                    if (!l || !nonextreme(d, h, e & c))
                        continue;
                    const double post = odds(d, h, e & c).value();
                    const double prior = odds(d, h, c).value();
                    worst = std::max(worst, std::abs(post - *l * prior) / std::max(1.0, post));
                    ++n;
                }
    });
    return {n > 0 && worst <= 1e-12, std::to_string(n) + " triples, max normalized error " + sci(worst)};
}

Outcome combination_identity()
{
    double worst = 0.0;
    std::size_t n = 0;
    for_each_model(dense_thousand(), [&](const JointDistribution& d, const std::vector<WorldMask>& lits,
                                         const std::vector<WorldMask>& contexts) {
        for (const auto& h : lits)
            for (const auto& c : contexts)
                for (const auto& e1 : lits)
                    for (const auto& e2 : lits) {
                        const auto joint = finite_lambda(d, h, e1 & e2, c);
                        const auto first = finite_lambda(d, h, e1, c);
                        const auto second = finite_lambda(d, h, e2, e1 & c);
                        if (!joint || !first || !second)
                            continue;
                        worst = std::max(worst, std::abs(*joint - *first * *second) / std::max(1.0, std::abs(*joint)));
                        ++n;
                    }
    });
    return {n > 0 && worst <= 1e-12, std::to_string(n) + " pairs, max normalized error " + sci(worst)};
}

Outcome chain_vs_oracle()
{
    const ModelEnsemble ens{1003, 5, 500, Scheme::dense_random};
    const auto names = ens.atom_names();
    const auto h = Proposition::atom(names[0]);
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    std::size_t chains = 0;
    for (std::size_t i = 0; i < ens.model_count; ++i) {
        const auto d = ens.model(i);
        // n distinct evidence atoms, each observed true or false.
        std::vector<std::string> pool(names.begin() + 1, names.end());
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t n = 1 + rng() % 4;
        std::vector<Proposition> evidence;
        Proposition all = Proposition::truth();
        for (std::size_t k = 0; k < n; ++k) {
            const auto a = Proposition::atom(pool[k]);
            evidence.push_back(rng() & 1 ? a : !a);
            all = all & evidence.back();
        }
        const auto report = update_chain(d, h, evidence, Proposition::truth(), ChainMode::exact);
        worst = std::max(worst, std::abs(report.final_probability - probability(d, h, all)));
        ++chains;
    }
    return {chains == 500 && worst <= 1e-9, std::to_string(chains) + " chains, max |diff| " + sci(worst)};
}

Outcome independence_correspondence()
{
    const ModelEnsemble factored{1004, 4, 200, Scheme::factored_conditionally_independent};
    const auto lam = audit_independence_correspondence(UpdateMeasure::likelihood_ratio(), factored);
    const ModelEnsemble adversarial{1005, 4, 50, Scheme::dependent_adversarial};
    const auto foil = audit_independence_correspondence(UpdateMeasure::probability_difference(), adversarial);
    const double witness = foil.witnesses.empty() ? 0.0 : foil.witnesses.front().violation;
    const bool ok = lam.samples > 0 && lam.max_violation <= 1e-9 && witness > 0.01;
    return {ok, "lambda max deviation " + sci(lam.max_violation) + " over " + std::to_string(lam.samples) +
                    " pairs, prob-diff worst witness " + sci(witness)};
}

Outcome difference_property()
{
    double worst = 0.0;
    std::size_t n = 0;
    for_each_model(dense_thousand(), [&](const JointDistribution& d, const std::vector<WorldMask>& lits,
                                         const std::vector<WorldMask>& contexts) {
        for (const auto& h : lits)
            for (const auto& c : contexts)
                for (const auto& e : lits) {
                    const auto l = finite_lambda(d, h, e, c);
                    if (!l || *l <= 0.0 || !nonextreme(d, h, e & c))
                        continue;
                    const double w = weight_of_evidence(d, h, e, c);
                    const double diff = std::log(odds(d, h, e & c).value()) - std::log(odds(d, h, c).value());
                    worst = std::max(worst, std::abs(w - diff));
                    ++n;
                }
    });
    return {n > 0 && worst <= 1e-12, std::to_string(n) + " samples, max error " + sci(worst)};
}

Outcome transform_recovery()
{
    const auto grid = lattice::binary_grid(-16, 65);
    const auto mul = recover_additive_transform(lattice::multiplication_samples(-16, 65), grid);
    const double dev_log = lattice::scaled_deviation(mul.transform, [](double t) { return std::log(t); });
    const auto sgrid = lattice::binary_grid(1, 64, -1.0);
    const auto shifted = recover_additive_transform(lattice::shifted_product_samples(64), sgrid);
    const double dev_log1p = lattice::scaled_deviation(shifted.transform, [](double t) { return std::log1p(t); });
    const bool ok = mul.residual <= 1e-6 && dev_log <= 1e-3 && dev_log1p <= 1e-3;
    return {ok, "x*y residual " + sci(mul.residual) + ", deviation from log " + sci(dev_log) +
                    "; x+y+xy deviation from log1p " + sci(dev_log1p)};
}

Outcome power_law()
{
    double worst_alpha = 0.0;
    double worst_exp = 0.0;
    const std::pair<double, double> cases[] = {{2.0, 1.5}, {1.0, 1.0}, {0.3, -2.0}, {7.5, 0.25}};
    for (const auto& [alpha, a] : cases) {
        std::vector<std::pair<double, double>> s;
        for (int k = 1; k <= 40; ++k)
            s.emplace_back(0.25 * k, alpha * std::pow(0.25 * k, a));
        const auto fit = fit_power_law(s);
        worst_alpha = std::max(worst_alpha, std::abs(fit.alpha - alpha) / alpha);
        worst_exp = std::max(worst_exp, std::abs(fit.exponent - a));
    }
    std::vector<std::pair<double, double>> control;
    for (int k = 0; k <= 90; ++k)
        control.emplace_back(1.0 + 0.1 * k, 2.0 + 0.1 * k);
    const double control_residual = fit_power_law(control).residual;
    const bool ok = worst_alpha <= 1e-9 && worst_exp <= 1e-9 && control_residual > 1e-2;
    return {ok, "max rel alpha error " + sci(worst_alpha) + ", max exponent error " + sci(worst_exp) +
                    ", x+1 residual " + sci(control_residual)};
}

Outcome classification()
{
    const auto suite = standard_suite(0);
    const auto lam = classify_measure(UpdateMeasure::likelihood_ratio(), suite);
    const auto sq = classify_measure(UpdateMeasure::parse("power:2:3:lambda"), suite);
    const auto sq1 = classify_measure(UpdateMeasure::parse("power:2:1:lambda"), suite);
    const auto pd = classify_measure(UpdateMeasure::probability_difference(), suite);
    const auto pr = classify_measure(UpdateMeasure::posterior_ratio(), suite);
    const auto ll = classify_measure(UpdateMeasure::log_likelihood_ratio(), suite);
    auto near = [](const Classification& c, double a) {
        return c.verdict == Verdict::transform_of_lambda && c.A_estimate && std::abs(*c.A_estimate - a) <= 1e-6;
    };
    const bool ok = near(lam, 1.0) && near(sq, 2.0) && near(sq1, 2.0) &&
                    pd.verdict == Verdict::update_but_not_lambda && pr.verdict == Verdict::update_but_not_lambda &&
                    ll.verdict == Verdict::transform_of_lambda;
    auto a = [](const Classification& c) { return c.A_estimate ? sci(*c.A_estimate) : std::string("-"); };
    return {ok, "lambda A=" + a(lam) + ", power:2:3 A=" + a(sq) + ", power:2:1 A=" + a(sq1) +
                    ", prob-diff " + std::string(verdict_name(pd.verdict)) + ", posterior-ratio " +
                    std::string(verdict_name(pr.verdict)) + ", log-lambda " + std::string(verdict_name(ll.verdict))};
}

Outcome oracle_invariants()
{
    double product = 0.0;
    double sum = 0.0;
    double norm = 0.0;
    bool equal = true;
    std::size_t models = 0;
    for (std::size_t atoms = 3; atoms <= 5; ++atoms)
        for (const auto& ens : standard_suite(1006 + atoms, 20, atoms)) {
            const auto names = ens.atom_names();
            auto props = literals(names);
            if (atoms <= 4) {
                const auto lits = props;
                for (std::size_t i = 0; i < lits.size(); ++i)
                    for (std::size_t j = i + 1; j < lits.size(); ++j)
                        props.push_back(lits[i] & lits[j]);
            }
            props.push_back(Proposition::truth());
            const auto a = Proposition::atom(names[1]);
            const auto b = Proposition::atom(names[2]);
            const std::pair<Proposition, Proposition> equivalents[] = {
                {a & b, b & a}, {a, !!a}, {a, a & Proposition::truth()}, {!(a | b), (!a) & (!b)}, {a | b, b | a}};
            for (std::size_t i = 0; i < ens.model_count; ++i) {
                const auto d = ens.model(i);
                ++models;
                double total = 0.0;
                for (double p : d.table())
                    total += p;
                norm = std::max(norm, std::abs(total - 1.0));
                std::vector<WorldMask> masks;
                for (const auto& p : props)
                    masks.push_back(d.mask(p));
                for (const auto& e : masks) {
                    if (d.mass(e) == 0.0)
                        continue;
                    for (const auto& p : masks) {
                        sum = std::max(sum, std::abs(probability(d, p, e) + probability(d, ~p, e) - 1.0));
                        if (d.mass(p & e) == 0.0)
                            continue;
                        for (const auto& q : masks)
                            product = std::max(product, std::abs(probability(d, p & q, e) -
                                                                 probability(d, p, e) * probability(d, q, p & e)));
                    }
                }
                for (const auto& [x, y] : equivalents)
                    for (const auto& ctx : {Proposition::truth(), Proposition::atom(names[0])})
                        equal = equal && probability(d, x, ctx) == probability(d, y, ctx) &&
                                probability(d, ctx, x) == probability(d, ctx, y);
            }
        }
    const bool ok = product <= 1e-12 && sum <= 1e-12 && norm <= 1e-12 && equal;
    return {ok, std::to_string(models) + " models, product " + sci(product) + ", sum " + sci(sum) +
                    ", normalization " + sci(norm) + (equal ? ", equivalents exact" : ", equivalents DIFFER")};
}

} // namespace

int main()
{
    criterion(1, "Bayes odds identity on 1000 dense models", 10.0, bayes_odds);
    criterion(2, "combination identity on all ordered evidence pairs", 10.0, combination_identity);
    criterion(3, "exact chains match oracle conditioning", 0.0, chain_vs_oracle);
    criterion(4, "independence correspondence and foil witness", 0.0, independence_correspondence);
    criterion(5, "log lambda equals the log-odds difference", 0.0, difference_property);
    criterion(6, "additive transform recovery", 30.0, transform_recovery);
    criterion(7, "power-law fit and non-power-law control", 0.0, power_law);
    criterion(8, "classification of control measures", 60.0, classification);
    criterion(9, "probability axioms hold in the oracle", 0.0, oracle_invariants);
    std::printf("%s: %d criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
