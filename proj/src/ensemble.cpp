#include "belief/ensemble.hpp"

#include "belief/error.hpp"

#include <array>
#include <random>

namespace belief {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}

    // [lo, hi); built from raw engine output so results match across
    // standard-library implementations.
    double operator()(double lo, double hi)
    {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::mt19937_64 engine_;
};

bool bit(std::size_t world, std::size_t atom) noexcept { return (world >> atom) & 1u; }

double choose(bool value, double p_true) noexcept { return value ? p_true : 1.0 - p_true; }

std::vector<double> dense_table(std::size_t atoms, Uniform& rng)
{
    std::vector<double> table(std::size_t{1} << atoms);
    double total = 0.0;
    for (auto& w : table) {
        w = rng(0.02, 1.0);
        total += w;
    }
    for (auto& w : table)
        w /= total;
    return table;
}

// Conditional probability tables for evidence atoms given H: [k][h].
std::vector<std::array<double, 2>> evidence_given_h(std::size_t atoms, Uniform& rng)
{
    std::vector<std::array<double, 2>> cpt(atoms);
    for (std::size_t k = 1; k < atoms; ++k)
        cpt[k] = {rng(0.05, 0.95), rng(0.05, 0.95)};
    return cpt;
}

std::vector<double> factored_table(std::size_t atoms, Uniform& rng)
{
    const double p_h = rng(0.15, 0.85);
    const auto cpt = evidence_given_h(atoms, rng);
    std::vector<double> table(std::size_t{1} << atoms);
    for (std::size_t w = 0; w < table.size(); ++w) {
        const bool h = bit(w, 0);
        double p = choose(h, p_h);
        for (std::size_t k = 1; k < atoms; ++k)
            p *= choose(bit(w, k), cpt[k][h ? 1 : 0]);
        table[w] = p;
    }
    return table;
}

bool is_copy_of_e1(std::size_t atoms, std::size_t k) noexcept
{
    if (atoms == 3)
        return k == 2;
    return k >= 3 && k % 2 == 1;
}

std::vector<double> adversarial_table(std::size_t atoms, Uniform& rng)
{
    const double p_h = rng(0.15, 0.85);
    const auto cpt = evidence_given_h(atoms, rng);
    std::vector<double> flip(atoms, 0.0);
    for (std::size_t k = 2; k < atoms; ++k)
        if (is_copy_of_e1(atoms, k))
            flip[k] = rng(0.02, 0.1);
    std::vector<double> table(std::size_t{1} << atoms);
    for (std::size_t w = 0; w < table.size(); ++w) {
        const bool h = bit(w, 0);
        double p = choose(h, p_h);
        for (std::size_t k = 1; k < atoms; ++k) {
            if (is_copy_of_e1(atoms, k))
                p *= bit(w, k) == bit(w, 1) ? 1.0 - flip[k] : flip[k];
            else
                p *= choose(bit(w, k), cpt[k][h ? 1 : 0]);
        }
        table[w] = p;
    }
    return table;
}

} // namespace

std::string_view scheme_name(Scheme scheme) noexcept
{
    switch (scheme) {
    case Scheme::dense_random: return "dense_random";
    case Scheme::factored_conditionally_independent: return "factored_conditionally_independent";
    case Scheme::dependent_adversarial: return "dependent_adversarial";
    }
    return "dense_random";
}

Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : {Scheme::dense_random, Scheme::factored_conditionally_independent,
                     Scheme::dependent_adversarial})
        if (scheme_name(s) == name)
            return s;
    throw Error(ErrorCode::invalid_argument, "unknown ensemble scheme \"" + std::string(name) + "\"");
}

void ModelEnsemble::validate() const
{
    if (atom_count < 3 || atom_count > 5)
        throw Error(ErrorCode::invalid_argument, "ensemble atom count must be 3..5");
    if (model_count == 0)
        throw Error(ErrorCode::invalid_argument, "ensemble must contain at least one model");
}

std::vector<std::string> ModelEnsemble::atom_names() const
{
    std::vector<std::string> names{"H"};
    for (std::size_t k = 1; k < atom_count; ++k)
        names.push_back("E" + std::to_string(k));
    return names;
}

JointDistribution ModelEnsemble::model(std::size_t index) const
{
    validate();
    const std::uint64_t stream =
        splitmix64(splitmix64(seed) ^ splitmix64(index * 8 + atom_count) ^
                   (static_cast<std::uint64_t>(scheme) << 56));
    Uniform rng(stream);
    std::vector<double> table;
    switch (scheme) {
    case Scheme::dense_random: table = dense_table(atom_count, rng); break;
    case Scheme::factored_conditionally_independent: table = factored_table(atom_count, rng); break;
    case Scheme::dependent_adversarial: table = adversarial_table(atom_count, rng); break;
    }
    return JointDistribution::from_table(atom_names(), std::move(table));
}

std::string ModelEnsemble::label() const
{
    return std::string(scheme_name(scheme)) + "/seed=" + std::to_string(seed) +
           "/atoms=" + std::to_string(atom_count);
}

std::vector<ModelEnsemble> standard_suite(std::uint64_t seed, std::size_t models_per_scheme,
                                          std::size_t atom_count)
{
    return {
        {seed, atom_count, models_per_scheme, Scheme::dense_random},
        {seed, atom_count, models_per_scheme, Scheme::dependent_adversarial},
        {seed, atom_count, models_per_scheme, Scheme::factored_conditionally_independent},
    };
}

std::vector<Proposition> literals(const std::vector<std::string>& atoms)
{
    std::vector<Proposition> out;
    for (const auto& a : atoms) {
        out.push_back(Proposition::atom(a));
        out.push_back(!Proposition::atom(a));
    }
    return out;
}

} // namespace belief
