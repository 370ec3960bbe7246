#pragma once

#include "belief/harness.hpp"
#include "belief/transforms.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace belief {

enum class Verdict { transform_of_lambda, update_but_not_lambda, not_an_update };

std::string_view verdict_name(Verdict v) noexcept;

struct Classification {
    std::string measure;
    bool is_update = false;               // definition, combination and consistency passed
    bool satisfies_correspondence = false;
    std::optional<double> A_estimate;     // log-log slope against lambda
    Verdict verdict = Verdict::not_an_update;
    std::string route;                    // "log-log", "additive-recovery" or "none"
    std::optional<double> fit_residual;
    std::string diagnostic;
    std::vector<CheckResult> checks;
};

inline constexpr double kClassificationResidual = 1e-6;
// Combination samples fed to additive recovery are thinned to this many.
inline constexpr std::size_t kRecoverySampleCap = 4096;

// Runs the four audits and, when the measure is a modular update, relates it
// to lambda: positive-valued measures by a log-log power-law fit, others by
// recovering the additive transform h and checking h(U) is affine in
// log lambda (A is then only defined up to h's scale and is left absent).
//
// Requires the ensembles to include the factored and adversarial schemes.
Classification classify_measure(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles);

} // namespace belief
