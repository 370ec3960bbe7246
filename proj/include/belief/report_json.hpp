#pragma once

// JSON forms of reports.  Non-finite numbers are written as the strings
// "inf", "-inf" and "nan" and read back the same way.

#include "belief/calculus.hpp"
#include "belief/classify.hpp"
#include "belief/harness.hpp"
#include "belief/transforms.hpp"

#include <json.hpp>

namespace belief {

nlohmann::json number_to_json(double v);
double number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelRef& ref);
nlohmann::json to_json(const Observation& obs);
nlohmann::json to_json(const Witness& w);
// {"check", "passed", "samples", "max_violation", "witnesses", ...}
nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const ChainReport& r);
nlohmann::json to_json(const Classification& c);
// {"grid": [...], "values": [...], "anchor": k}
nlohmann::json to_json(const MonotoneTransform& t);
// {"alpha": ..., "A": ..., "residual": ...}
nlohmann::json to_json(const PowerLawFit& f);

CheckResult check_result_from_json(const nlohmann::json& j);
MonotoneTransform transform_from_json(const nlohmann::json& j);
PowerLawFit power_law_from_json(const nlohmann::json& j);

std::string_view mode_name(ChainMode mode) noexcept;

} // namespace belief
