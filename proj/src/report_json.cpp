#include "belief/report_json.hpp"

#include "belief/error.hpp"

#include <cmath>

namespace belief {

using nlohmann::json;

json number_to_json(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return kInfinity;
        if (s == "-inf")
            return -kInfinity;
        if (s == "nan")
            return std::nan("");
    }
    throw Error(ErrorCode::parse_error, "expected a number, got " + j.dump());
}

std::string_view mode_name(ChainMode mode) noexcept
{
    return mode == ChainMode::exact ? "exact" : "modular";
}

json to_json(const ModelRef& ref)
{
    return {{"scheme", scheme_name(ref.scheme)},
            {"seed", ref.seed},
            {"atoms", ref.atom_count},
            {"index", ref.index}};
}

json to_json(const Observation& obs)
{
    json values = json::array();
    for (double v : obs.values)
        values.push_back(number_to_json(v));
    return {{"model", to_json(obs.model)},
            {"H", obs.hypothesis},
            {"E", obs.evidence},
            {"e", obs.context},
            {"values", values}};
}

json to_json(const Witness& w)
{
    json obs = json::array();
    for (const auto& o : w.observations)
        obs.push_back(to_json(o));
    return {{"violation", number_to_json(w.violation)}, {"observations", obs}};
}

json to_json(const CheckResult& r)
{
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back(to_json(w));
    return {{"check", r.check},
            {"passed", r.passed},
            {"samples", r.samples},
            {"excluded", r.excluded},
            {"max_violation", number_to_json(r.max_violation)},
            {"tolerance", number_to_json(r.tolerance)},
            {"witnesses", witnesses}};
}

json to_json(const ChainReport& r)
{
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"evidence", s.evidence.to_string()},
                         {"lambda", number_to_json(s.lambda)},
                         {"posterior_odds", number_to_json(s.posterior_odds.value())}});
    return {{"hypothesis", r.hypothesis.to_string()},
            {"context", r.context.to_string()},
            {"mode", mode_name(r.mode)},
            {"prior_odds", number_to_json(r.prior_odds.value())},
            {"prior_probability", number_to_json(r.prior_probability)},
            {"steps", steps},
            {"final_odds", number_to_json(r.final_odds.value())},
            {"final_probability", number_to_json(r.final_probability)}};
}

json to_json(const Classification& c)
{
    json checks = json::array();
    for (const auto& r : c.checks)
        checks.push_back(to_json(r));
    return {{"measure", c.measure},
            {"is_update", c.is_update},
            {"satisfies_correspondence", c.satisfies_correspondence},
            {"A_estimate", c.A_estimate ? number_to_json(*c.A_estimate) : json(nullptr)},
            {"verdict", verdict_name(c.verdict)},
            {"route", c.route},
            {"fit_residual", c.fit_residual ? number_to_json(*c.fit_residual) : json(nullptr)},
            {"diagnostic", c.diagnostic},
            {"checks", checks}};
}

json to_json(const MonotoneTransform& t)
{
    return {{"grid", t.grid()}, {"values", t.values()}, {"anchor", t.anchor()}};
}

json to_json(const PowerLawFit& f)
{
    return {{"alpha", f.alpha}, {"A", f.exponent}, {"residual", f.residual}};
}

namespace {

ModelRef model_ref_from_json(const json& j)
{
    return {parse_scheme(j.at("scheme").get<std::string>()), j.at("seed").get<std::uint64_t>(),
            j.at("atoms").get<std::size_t>(), j.at("index").get<std::size_t>()};
}

} // namespace

CheckResult check_result_from_json(const json& j)
{
    try {
        CheckResult r;
        r.check = j.at("check").get<std::string>();
        r.passed = j.at("passed").get<bool>();
        r.samples = j.at("samples").get<std::size_t>();
        r.excluded = j.value("excluded", std::size_t{0});
        r.max_violation = number_from_json(j.at("max_violation"));
        r.tolerance = j.contains("tolerance") ? number_from_json(j.at("tolerance")) : 0.0;
        for (const auto& wj : j.at("witnesses")) {
            Witness w;
            w.violation = number_from_json(wj.at("violation"));
            for (const auto& oj : wj.at("observations")) {
                Observation o;
                o.model = model_ref_from_json(oj.at("model"));
                o.hypothesis = oj.at("H").get<std::string>();
                o.evidence = oj.at("E").get<std::vector<std::string>>();
                o.context = oj.at("e").get<std::string>();
                for (const auto& v : oj.at("values"))
                    o.values.push_back(number_from_json(v));
                w.observations.push_back(std::move(o));
            }
            r.witnesses.push_back(std::move(w));
        }
        return r;
    } catch (const json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("malformed check result: ") + err.what());
    }
}

MonotoneTransform transform_from_json(const json& j)
{
    try {
        return MonotoneTransform(j.at("grid").get<std::vector<double>>(),
                                 j.at("values").get<std::vector<double>>(),
                                 j.at("anchor").get<std::size_t>());
    } catch (const json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("malformed transform: ") + err.what());
    }
}

PowerLawFit power_law_from_json(const json& j)
{
    try {
        return {j.at("alpha").get<double>(), j.at("A").get<double>(), j.at("residual").get<double>()};
    } catch (const json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("malformed power-law fit: ") + err.what());
    }
}

} // namespace belief
