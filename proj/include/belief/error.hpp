#pragma once

#include <stdexcept>
#include <string>

namespace belief {

enum class ErrorCode {
    // input errors
    parse_error,
    invalid_model,
    mass_deficit,
    mass_excess,
    unknown_measure,
    invalid_argument,
    out_of_grid,
    // computation errors
    impossible_context,
    degenerate_prior,
    impossible_evidence,
    undefined_update,
    indeterminate,
    chain_broken,
    infinite_weight,
    insufficient_samples,
    vacuous_audit,
    no_additive_representation,
    log_domain_violation,
    underdetermined,
};

enum class ErrorCategory { input, computation };

constexpr ErrorCategory category_of(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::invalid_model:
    case ErrorCode::mass_deficit:
    case ErrorCode::mass_excess:
    case ErrorCode::unknown_measure:
    case ErrorCode::invalid_argument:
    case ErrorCode::out_of_grid:
        return ErrorCategory::input;
    default:
        return ErrorCategory::computation;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    ErrorCategory category() const noexcept { return category_of(code_); }

private:
    ErrorCode code_;
};

} // namespace belief
