#pragma once

#include "belief/ensemble.hpp"
#include "belief/measures.hpp"

#include <span>
#include <string>
#include <vector>

namespace belief {

// Identifies one generated model so a witness can be replayed standalone.
struct ModelRef {
    Scheme scheme = Scheme::dense_random;
    std::uint64_t seed = 0;
    std::size_t atom_count = 0;
    std::size_t index = 0;

    JointDistribution load() const;
};

struct Observation {
    ModelRef model;
    std::string hypothesis;
    std::vector<std::string> evidence;
    std::string context;
    std::vector<double> values;
};

struct Witness {
    double violation = 0.0;
    std::vector<Observation> observations;
};

struct CheckResult {
    std::string check;
    bool passed = false;
    std::size_t samples = 0;
    // Triples skipped because the measure was undefined or infinite there.
    std::size_t excluded = 0;
    double max_violation = 0.0;
    // passed <=> max_violation <= tolerance.
    double tolerance = 0.0;
    std::vector<Witness> witnesses;
};

namespace audit_limits {
inline constexpr double dependence_key_width = 1e-9;   // |dU|, |dprior| for "same input"
inline constexpr double dependence_output_slack = 1e-6; // allowed |dposterior| for same input
inline constexpr double bucket_width = 1e-3;
inline constexpr double monotone_slack = 1e-9;
inline constexpr double associativity_slack = 1e-12;
inline constexpr double correspondence_tolerance = 1e-6;
inline constexpr double independence_tolerance = 1e-9;
inline constexpr std::size_t min_samples = 100;
inline constexpr std::size_t max_witnesses = 10;
} // namespace audit_limits

// Check names used in reports.
inline constexpr const char* kDefinitionCheck = "definition";
inline constexpr const char* kCombinationCheck = "combination";
inline constexpr const char* kConsistencyCheck = "consistency";
inline constexpr const char* kCorrespondenceCheck = "independence_correspondence";

// Samples (U, prior, posterior).  Passes when equal (U, prior) inputs give
// equal posteriors and the posterior is nondecreasing in each input within
// buckets of the other.  max_violation is in units of the relevant slack, so
// the tolerance is 1.
CheckResult audit_definition(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles);
CheckResult audit_definition(const UpdateMeasure& m, const ModelEnsemble& ensemble);

// Samples (U(H,E1,e), U(H,E2,E1&e), U(H,E1&E2,e)) with the same dependence
// and bi-monotonicity tests, plus agreement of the two bracketings of
// three-item evidence.
CheckResult audit_combination(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles);
CheckResult audit_combination(const UpdateMeasure& m, const ModelEnsemble& ensemble);

// Exact agreement on logically equivalent argument forms.
CheckResult audit_consistency(const UpdateMeasure& m, std::span<const ModelEnsemble> ensembles);
CheckResult audit_consistency(const UpdateMeasure& m, const ModelEnsemble& ensemble);

// For every conditionally independent (E1, E2) pair, requires
// |U(H,E2,E1&e) - U(H,E2,e)| <= 1e-6 * max(1, |U(H,E2,e)|).  Throws
// vacuous_audit when no such pair exists.
CheckResult audit_independence_correspondence(const UpdateMeasure& m,
                                              std::span<const ModelEnsemble> ensembles);
CheckResult audit_independence_correspondence(const UpdateMeasure& m,
                                              const ModelEnsemble& ensemble);

// All four audits in the order definition, combination, consistency,
// independence_correspondence.
std::vector<CheckResult> run_all_audits(const UpdateMeasure& m,
                                        std::span<const ModelEnsemble> ensembles);

// Whether the measure is expected to pass the named check.  The foil
// measures (posterior-ratio, prob-diff) are updates but not modular; power
// transforms inherit their base's expectations.  A negative exponent reverses
// the order, which the definition check rejects; on a positive base the
// combined value is still increasing in both arguments, on a signed base the
// transform is not monotone and combination fails as well.
bool expected_to_pass(const UpdateMeasure& m, const std::string& check);

} // namespace belief
