#include "belief/measures.hpp"

#include "belief/error.hpp"
#include "belief/kernels.hpp"

#include <charconv>
#include <cmath>
#include <optional>

namespace belief {

namespace {

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool parse_number(std::string_view text, double& out)
{
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size() && std::isfinite(out);
}

struct Ratio {
    double numerator;
    double denominator;
};

// p(E|H,e) and p(E|!H,e), after checking the prior and the evidence.
struct Conditionals {
    double prior;
    double posterior;
    Ratio likelihoods;
};

std::optional<Conditionals> conditionals(const JointDistribution& d, const WorldMask& h,
                                        const WorldMask& evidence, const WorldMask& context,
                                        ErrorCode& failure)
{
    if (d.mass(context) <= 0.0) {
        failure = ErrorCode::impossible_context;
        return std::nullopt;
    }
    const double prior = probability(d, h, context);
    if (prior <= 0.0 || prior >= 1.0) {
        failure = ErrorCode::degenerate_prior;
        return std::nullopt;
    }
    const WorldMask evidence_context = evidence & context;
    if (d.mass(evidence_context) <= 0.0) {
        failure = ErrorCode::impossible_evidence;
        return std::nullopt;
    }
    const double posterior = probability(d, h, evidence_context);
    const auto with_h = kernels::conditional_sums(d.table(), evidence.words(), (h & context).words());
    const auto with_not_h = kernels::conditional_sums(d.table(), evidence.words(), (~h & context).words());
    return Conditionals{prior, posterior,
                        {with_h.joint / with_h.context, with_not_h.joint / with_not_h.context}};
}

std::optional<double> lambda_from(const Ratio& r, ErrorCode& failure)
{
    if (r.denominator == 0.0) {
        if (r.numerator > 0.0)
            return kInfinity;
        failure = ErrorCode::undefined_update;
        return std::nullopt;
    }
    return r.numerator / r.denominator;
}

const char* failure_message(ErrorCode code)
{
    switch (code) {
    case ErrorCode::impossible_context: return "impossible context: p(e) = 0";
    case ErrorCode::degenerate_prior: return "degenerate prior: p(H|e) is 0 or 1";
    case ErrorCode::impossible_evidence: return "impossible evidence: p(E & e) = 0";
    case ErrorCode::undefined_update: return "undefined update: likelihood ratio is 0/0";
    default: return "measure undefined";
    }
}

} // namespace

UpdateMeasure UpdateMeasure::likelihood_ratio()
{
    return UpdateMeasure(MeasureKind::likelihood_ratio, "lambda");
}

UpdateMeasure UpdateMeasure::log_likelihood_ratio()
{
    return UpdateMeasure(MeasureKind::log_likelihood_ratio, "log-lambda");
}

UpdateMeasure UpdateMeasure::posterior_ratio()
{
    return UpdateMeasure(MeasureKind::posterior_ratio, "posterior-ratio");
}

UpdateMeasure UpdateMeasure::probability_difference()
{
    return UpdateMeasure(MeasureKind::probability_difference, "prob-diff");
}

UpdateMeasure UpdateMeasure::power_transform(double exponent, double scale, UpdateMeasure base)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw Error(ErrorCode::unknown_measure, "power transform needs a positive finite scale");
    if (exponent == 0.0 || !std::isfinite(exponent))
        throw Error(ErrorCode::unknown_measure, "power transform needs a finite nonzero exponent");
    UpdateMeasure m(MeasureKind::power_transform,
                    "power:" + format_number(exponent) + ":" + format_number(scale) + ":" + base.name());
    m.exponent_ = exponent;
    m.scale_ = scale;
    m.base_ = std::make_shared<const UpdateMeasure>(std::move(base));
    return m;
}

UpdateMeasure UpdateMeasure::parse(std::string_view name)
{
    if (name == "lambda")
        return likelihood_ratio();
    if (name == "log-lambda")
        return log_likelihood_ratio();
    if (name == "posterior-ratio")
        return posterior_ratio();
    if (name == "prob-diff")
        return probability_difference();
    if (name.starts_with("power:")) {
        std::string_view rest = name.substr(6);
        const auto c1 = rest.find(':');
        const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
        double exponent = 0.0;
        double scale = 0.0;
        if (c2 != std::string_view::npos && parse_number(rest.substr(0, c1), exponent) &&
            parse_number(rest.substr(c1 + 1, c2 - c1 - 1), scale))
            return power_transform(exponent, scale, parse(rest.substr(c2 + 1)));
        throw Error(ErrorCode::unknown_measure,
                    "malformed power measure \"" + std::string(name) + "\"; expected power:<A>:<alpha>:<base>");
    }
    throw Error(ErrorCode::unknown_measure, "unknown measure \"" + std::string(name) + "\"");
}

std::optional<double> UpdateMeasure::try_evaluate(const JointDistribution& d, const WorldMask& h,
                                                  const WorldMask& evidence, const WorldMask& context,
                                                  ErrorCode* failure) const
{
    ErrorCode why = ErrorCode::undefined_update;
    std::optional<double> out;
    if (kind_ == MeasureKind::power_transform) {
        out = base_->try_evaluate(d, h, evidence, context, &why);
        if (out) {
            const double magnitude = scale_ * std::pow(std::abs(*out), exponent_);
            out = *out < 0.0 ? -magnitude : magnitude;
        }
    } else if (const auto c = conditionals(d, h, evidence, context, why)) {
        switch (kind_) {
        case MeasureKind::likelihood_ratio: out = lambda_from(c->likelihoods, why); break;
        case MeasureKind::log_likelihood_ratio:
            out = lambda_from(c->likelihoods, why);
            if (out)
                out = std::log(*out);
            break;
        case MeasureKind::posterior_ratio: out = c->posterior / c->prior; break;
        case MeasureKind::probability_difference: out = c->posterior - c->prior; break;
        case MeasureKind::power_transform: break;
        }
    }
    if (!out && failure)
        *failure = why;
    return out;
}

double UpdateMeasure::evaluate(const JointDistribution& d, const WorldMask& h,
                               const WorldMask& evidence, const WorldMask& context) const
{
    ErrorCode why = ErrorCode::undefined_update;
    if (const auto v = try_evaluate(d, h, evidence, context, &why))
        return *v;
    throw Error(why, failure_message(why));
}

double UpdateMeasure::evaluate(const JointDistribution& d, const Proposition& h,
                               const Proposition& evidence, const Proposition& context) const
{
    return evaluate(d, d.mask(h), d.mask(evidence), d.mask(context));
}

double UpdateMeasure::neutral_value() const noexcept
{
    switch (kind_) {
    case MeasureKind::likelihood_ratio:
    case MeasureKind::posterior_ratio: return 1.0;
    case MeasureKind::log_likelihood_ratio:
    case MeasureKind::probability_difference: return 0.0;
    case MeasureKind::power_transform: {
        const double b = base_->neutral_value();
        return b == 0.0 ? 0.0 : scale_ * std::pow(std::abs(b), exponent_);
    }
    }
    return 0.0;
}

double likelihood_ratio(const JointDistribution& d, const WorldMask& h, const WorldMask& evidence,
                        const WorldMask& context)
{
    return UpdateMeasure::likelihood_ratio().evaluate(d, h, evidence, context);
}

double likelihood_ratio(const JointDistribution& d, const Proposition& h,
                        const Proposition& evidence, const Proposition& context)
{
    return UpdateMeasure::likelihood_ratio().evaluate(d, h, evidence, context);
}

} // namespace belief
