#include "belief/error.hpp"
#include "belief/harness.hpp"
#include "belief/report_json.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace belief;

namespace {

const std::vector<ModelEnsemble>& suite()
{
    static const auto s = standard_suite(7);
    return s;
}

const CheckResult& find(const std::vector<CheckResult>& results, const char* name)
{
    for (const auto& r : results)
        if (r.check == name)
            return r;
    throw std::runtime_error("missing check");
}

void check_invariants(const CheckResult& r)
{
    CHECK(r.passed == (r.max_violation <= r.tolerance));
    if (!r.passed)
        CHECK_FALSE(r.witnesses.empty());
    CHECK(r.witnesses.size() <= audit_limits::max_witnesses);
    CHECK(r.samples >= audit_limits::min_samples);
}

} // namespace

TEST_CASE("likelihood ratio passes all four audits")
{
    const auto results = run_all_audits(UpdateMeasure::likelihood_ratio(), suite());
    REQUIRE(results.size() == 4);
    CHECK(results[0].check == kDefinitionCheck);
    CHECK(results[3].check == kCorrespondenceCheck);
    for (const auto& r : results) {
        CAPTURE(r.check);
        CHECK(r.passed);
        check_invariants(r);
    }
}

TEST_CASE("probability difference is an update but not modular")
{
    const auto m = UpdateMeasure::probability_difference();
    const auto results = run_all_audits(m, suite());
    CHECK(find(results, kDefinitionCheck).passed);
    CHECK(find(results, kCombinationCheck).passed);
    CHECK(find(results, kConsistencyCheck).passed);
    const auto& corr = find(results, kCorrespondenceCheck);
    CHECK_FALSE(corr.passed);
    for (const auto& r : results)
        check_invariants(r);
    for (const auto& r : results)
        CHECK(expected_to_pass(m, r.check) == r.passed);
}

TEST_CASE("posterior ratio behaves like the other foil")
{
    const auto results = run_all_audits(UpdateMeasure::posterior_ratio(), suite());
    CHECK(find(results, kDefinitionCheck).passed);
    CHECK(find(results, kConsistencyCheck).passed);
    CHECK_FALSE(find(results, kCorrespondenceCheck).passed);
}

TEST_CASE("monotone transforms of lambda pass; an order-reversing one fails the definition")
{
    for (const char* name : {"power:2:1:lambda", "power:0.5:3:lambda", "log-lambda"}) {
        CAPTURE(name);
        for (const auto& r : run_all_audits(UpdateMeasure::parse(name), suite())) {
            CAPTURE(r.check);
            CHECK(r.passed);
        }
    }
    const auto rev = UpdateMeasure::parse("power:-1:1:lambda");
    const auto results = run_all_audits(rev, suite());
    CHECK_FALSE(find(results, kDefinitionCheck).passed);
    CHECK(find(results, kCorrespondenceCheck).passed);
    for (const auto& r : results)
        CHECK(expected_to_pass(rev, r.check) == r.passed);
}

TEST_CASE("correspondence witnesses replay standalone within 1e-12")
{
    const auto m = UpdateMeasure::probability_difference();
    const auto r = audit_independence_correspondence(m, suite());
    REQUIRE_FALSE(r.witnesses.empty());
    for (const auto& w : r.witnesses) {
        REQUIRE(w.observations.size() == 1);
        const auto& o = w.observations[0];
        const auto d = o.model.load();
        const auto h = Proposition::parse(o.hypothesis);
        const auto e1 = Proposition::parse(o.evidence.at(0));
        const auto e2 = Proposition::parse(o.evidence.at(1));
        const auto ctx = Proposition::parse(o.context);
        CHECK(conditionally_independent(d, e2, e1, h, ctx, audit_limits::independence_tolerance));
        const double after = m.evaluate(d, h, e2, e1 & ctx);
        const double before = m.evaluate(d, h, e2, ctx);
        CHECK(std::abs(after - o.values.at(0)) <= 1e-12);
        CHECK(std::abs(before - o.values.at(1)) <= 1e-12);
        const double dev = std::abs(after - before) / std::max(1.0, std::abs(before));
        CHECK(std::abs(dev - w.violation) <= 1e-12);
        // Independent reading through the per-world oracle.
        const double oracle_after = oracle::conditional(d, h, ctx & e1 & e2) - oracle::conditional(d, h, ctx & e1);
        CHECK(std::abs(oracle_after - after) <= 1e-12);
    }
    CHECK(r.witnesses.front().violation == r.max_violation);
    CHECK(r.max_violation > 0.01);
}

TEST_CASE("definition witnesses replay for an order-reversing measure")
{
    const auto m = UpdateMeasure::parse("power:-1:1:lambda");
    const auto r = audit_definition(m, suite());
    REQUIRE_FALSE(r.witnesses.empty());
    for (const auto& w : r.witnesses) {
        REQUIRE(w.observations.size() == 2);
        for (const auto& o : w.observations) {
            const auto d = o.model.load();
            const auto h = Proposition::parse(o.hypothesis);
            const auto e = Proposition::parse(o.evidence.at(0));
            const auto ctx = Proposition::parse(o.context);
            CHECK(std::abs(m.evaluate(d, h, e, ctx) - o.values.at(0)) <= 1e-12);
            CHECK(std::abs(probability(d, h, ctx) - o.values.at(1)) <= 1e-12);
            CHECK(std::abs(probability(d, h, e & ctx) - o.values.at(2)) <= 1e-12);
        }
    }
}

TEST_CASE("audits are deterministic")
{
    const auto m = UpdateMeasure::probability_difference();
    const auto a = run_all_audits(m, suite());
    const auto b = run_all_audits(m, standard_suite(7));
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
    const auto c = run_all_audits(m, standard_suite(8));
    CHECK(to_json(a[3]).dump() != to_json(c[3]).dump());
}

TEST_CASE("single-ensemble overloads and the excluded count")
{
    const ModelEnsemble one{1, 3, 1, Scheme::dense_random};
    const auto lam = UpdateMeasure::likelihood_ratio();
    const auto def = audit_definition(lam, one);
    CHECK(def.passed);
    // Evidence contradicting its context is impossible and therefore excluded.
    CHECK(def.excluded > 0);
    CHECK(def.samples + def.excluded == 6 * 7 * 6);
    CHECK(audit_combination(lam, one).passed);
    CHECK(audit_consistency(lam, one).passed);
    CHECK(audit_independence_correspondence(lam, one).passed);
}

TEST_CASE("check results round-trip through JSON")
{
    const auto r = audit_independence_correspondence(UpdateMeasure::probability_difference(), suite());
    const auto j = to_json(r);
    for (const char* key : {"check", "passed", "samples", "max_violation", "witnesses"})
        CHECK(j.contains(key));
    const auto back = check_result_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.check == r.check);
    CHECK(back.passed == r.passed);
    CHECK(back.samples == r.samples);
    CHECK(back.max_violation == r.max_violation);
    CHECK(back.witnesses.size() == r.witnesses.size());
    CHECK(to_json(back).dump() == j.dump());
}
