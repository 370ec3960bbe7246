#pragma once

#include "belief/distribution.hpp"
#include "belief/error.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace belief {

enum class MeasureKind {
    likelihood_ratio,
    log_likelihood_ratio,
    posterior_ratio,
    probability_difference,
    power_transform,
};

// A candidate belief-update measure U(H, E, e).  Immutable value type.
class UpdateMeasure {
public:
    static UpdateMeasure likelihood_ratio();
    static UpdateMeasure log_likelihood_ratio();
    static UpdateMeasure posterior_ratio();
    static UpdateMeasure probability_difference();
    // scale * sgn(b) * |b|^exponent of the base value b.  Requires scale > 0
    // and exponent != 0.
    static UpdateMeasure power_transform(double exponent, double scale, UpdateMeasure base);

    // CLI names: lambda, log-lambda, posterior-ratio, prob-diff,
    // power:<A>:<alpha>:<base>.  Throws unknown_measure.
    static UpdateMeasure parse(std::string_view name);

    const std::string& name() const noexcept { return name_; }
    MeasureKind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return exponent_; }
    double scale() const noexcept { return scale_; }
    // Only for power_transform.
    const UpdateMeasure& base() const noexcept { return *base_; }

    // Extended-real value; +inf / -inf signal certain evidence.  Throws
    // degenerate_prior, impossible_evidence, undefined_update, or
    // impossible_context.
    double evaluate(const JointDistribution& d, const WorldMask& h, const WorldMask& evidence,
                    const WorldMask& context) const;
    double evaluate(const JointDistribution& d, const Proposition& h, const Proposition& evidence,
                    const Proposition& context = Proposition::truth()) const;

    // As evaluate, but an undefined value comes back empty with its error
    // code in `failure` instead of being thrown.
    std::optional<double> try_evaluate(const JointDistribution& d, const WorldMask& h,
                                       const WorldMask& evidence, const WorldMask& context,
                                       ErrorCode* failure = nullptr) const;

    // Value when the evidence carries no information (E = TRUE).
    double neutral_value() const noexcept;

private:
    UpdateMeasure(MeasureKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    MeasureKind kind_;
    std::string name_;
    double exponent_ = 1.0;
    double scale_ = 1.0;
    std::shared_ptr<const UpdateMeasure> base_;
};

// Likelihood ratio p(E|H,e) / p(E|!H,e) with the x/0 -> +inf convention.
double likelihood_ratio(const JointDistribution& d, const WorldMask& h, const WorldMask& evidence,
                        const WorldMask& context);
double likelihood_ratio(const JointDistribution& d, const Proposition& h,
                        const Proposition& evidence,
                        const Proposition& context = Proposition::truth());

} // namespace belief
