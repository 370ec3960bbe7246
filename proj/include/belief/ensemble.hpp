#pragma once

#include "belief/distribution.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace belief {

enum class Scheme {
    dense_random,
    factored_conditionally_independent,
    dependent_adversarial,
};

std::string_view scheme_name(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view name);

// Reproducible family of random models.  Atom 0 is the hypothesis "H"; the
// rest are evidence atoms "E1", "E2", ...
//
//   dense_random        every world gets an independent positive weight
//   factored_...        p(H) * prod_i p(E_i | H)
//   dependent_adversarial
//                       like factored, but some evidence atoms are noisy
//                       copies of E1 (with three atoms E2 is the copy; with
//                       more, every odd-numbered E_k from E3 on is), so the
//                       family mixes independent and dependent evidence
struct ModelEnsemble {
    std::uint64_t seed = 0;
    std::size_t atom_count = 4;
    std::size_t model_count = 1;
    Scheme scheme = Scheme::dense_random;

    // Throws invalid_argument unless 3 <= atom_count <= 5 and model_count > 0.
    void validate() const;
    JointDistribution model(std::size_t index) const;
    std::vector<std::string> atom_names() const;
    std::string label() const;
};

// Dense, adversarial, and factored ensembles derived from one seed.
std::vector<ModelEnsemble> standard_suite(std::uint64_t seed, std::size_t models_per_scheme = 12,
                                          std::size_t atom_count = 4);

// Each atom and its negation, in atom order: a, !a, b, !b, ...
std::vector<Proposition> literals(const std::vector<std::string>& atoms);

} // namespace belief
