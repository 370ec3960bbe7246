#include "belief/calculus.hpp"

#include "belief/error.hpp"
#include "belief/measures.hpp"

#include <cmath>

namespace belief {

OddsValue posterior_odds(double lambda, OddsValue prior)
{
    if (!(lambda >= 0.0))
        throw Error(ErrorCode::invalid_argument, "likelihood ratio must be nonnegative");
    if ((lambda == kInfinity && prior.value() == 0.0) || (lambda == 0.0 && prior.is_infinite()))
        throw Error(ErrorCode::indeterminate, "indeterminate posterior: 0 * inf");
    return OddsValue(lambda * prior.value());
}

double combine(double lambda1, double lambda2)
{
    if ((lambda1 == 0.0 && lambda2 == kInfinity) || (lambda1 == kInfinity && lambda2 == 0.0))
        throw Error(ErrorCode::indeterminate, "indeterminate combination: 0 * inf");
    return lambda1 * lambda2;
}

double weight_of_evidence(const JointDistribution& d, const WorldMask& h,
                          const WorldMask& evidence, const WorldMask& context)
{
    const double lambda = likelihood_ratio(d, h, evidence, context);
    if (lambda == 0.0 || lambda == kInfinity)
        throw Error(ErrorCode::infinite_weight, "infinite weight: likelihood ratio is 0 or inf");
    return std::log(lambda);
}

double weight_of_evidence(const JointDistribution& d, const Proposition& h,
                          const Proposition& evidence, const Proposition& context)
{
    return weight_of_evidence(d, d.mask(h), d.mask(evidence), d.mask(context));
}

namespace {

OddsValue odds_from_log(double log_odds)
{
    return OddsValue(std::exp(log_odds));
}

[[noreturn]] void broken(std::size_t step, const std::string& why)
{
    throw Error(ErrorCode::chain_broken, "chain broken at step " + std::to_string(step) + ": " + why);
}

} // namespace

ChainReport update_chain(const JointDistribution& d, const Proposition& hypothesis,
                         std::span<const Proposition> evidence, const Proposition& context,
                         ChainMode mode)
{
    const WorldMask h = d.mask(hypothesis);
    const WorldMask base_context = d.mask(context);
    const double prior = probability(d, h, base_context);
    if (prior <= 0.0 || prior >= 1.0)
        throw Error(ErrorCode::degenerate_prior, "degenerate prior: p(H|e) is 0 or 1");

    ChainReport report;
    report.hypothesis = hypothesis;
    report.context = context;
    report.mode = mode;
    report.prior_probability = prior;
    report.prior_odds = OddsValue::from_probability(prior);

    const auto lambda_measure = UpdateMeasure::likelihood_ratio();
    double log_odds = std::log(report.prior_odds.value());
    WorldMask running_context = base_context;
    for (std::size_t k = 0; k < evidence.size(); ++k) {
        const std::size_t step = k + 1;
        const WorldMask e_k = d.mask(evidence[k]);
        const WorldMask& step_context = mode == ChainMode::exact ? running_context : base_context;
        if (d.mass(step_context) <= 0.0)
            broken(step, "conditioning context has probability 0");
        double lambda = 0.0;
        try {
            lambda = lambda_measure.evaluate(d, h, e_k, step_context);
        } catch (const Error& err) {
            broken(step, err.what());
        }
        const double log_lambda = std::log(lambda);
        if ((log_odds == -kInfinity && log_lambda == kInfinity) ||
            (log_odds == kInfinity && log_lambda == -kInfinity))
            throw Error(ErrorCode::indeterminate,
                        "indeterminate posterior at step " + std::to_string(step) + ": 0 * inf");
        log_odds += log_lambda;
        report.steps.push_back({evidence[k], lambda, odds_from_log(log_odds)});
        if (mode == ChainMode::exact)
            running_context &= e_k;
    }
    report.final_odds = odds_from_log(log_odds);
    report.final_probability = report.final_odds.probability();
    return report;
}

} // namespace belief
