#pragma once

#include "belief/distribution.hpp"

#include <span>
#include <vector>

namespace belief {

// Odds-likelihood form of Bayes' rule under extended-real multiplication.
// Throws indeterminate for (inf, 0) and (0, inf).
OddsValue posterior_odds(double lambda, OddsValue prior);

// Likelihood-ratio combination for sequential evidence.  Throws
// indeterminate for 0 * inf.
double combine(double lambda1, double lambda2);

// log lambda(H, E, e).  Throws infinite_weight when lambda is 0 or +inf.
double weight_of_evidence(const JointDistribution& d, const WorldMask& h,
                          const WorldMask& evidence, const WorldMask& context);
double weight_of_evidence(const JointDistribution& d, const Proposition& h,
                          const Proposition& evidence,
                          const Proposition& context = Proposition::truth());

enum class ChainMode { exact, modular };

struct ChainStep {
    Proposition evidence;
    double lambda = 1.0;
    OddsValue posterior_odds;
};

struct ChainReport {
    Proposition hypothesis;
    Proposition context;
    ChainMode mode = ChainMode::exact;
    OddsValue prior_odds;
    double prior_probability = 0.0;
    std::vector<ChainStep> steps;
    OddsValue final_odds;
    double final_probability = 0.0;
};

// Sequential updating of H by each evidence item in order.  Exact mode uses
// lambda(H, E_k, E_1 & ... & E_{k-1} & e); modular mode uses lambda(H, E_k, e)
// regardless of what was already observed.  Odds are accumulated in log space.
// Throws degenerate_prior for an extreme prior and chain_broken when a step
// cannot be evaluated.
ChainReport update_chain(const JointDistribution& d, const Proposition& hypothesis,
                         std::span<const Proposition> evidence, const Proposition& context,
                         ChainMode mode);

} // namespace belief
