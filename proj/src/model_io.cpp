#include "belief/distribution.hpp"
#include "belief/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace belief {

using nlohmann::json;

JointDistribution load_model(std::string_view document, const ModelLimits& limits)
{
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& err) {
        throw Error(ErrorCode::invalid_model, std::string("model is not valid JSON: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array())
        throw Error(ErrorCode::invalid_model, "model must be an object with an \"atoms\" array");
    if (!doc.contains("worlds") || !doc["worlds"].is_array())
        throw Error(ErrorCode::invalid_model, "model must have a \"worlds\" array");

    std::vector<std::string> atoms;
    for (const auto& a : doc["atoms"]) {
        if (!a.is_string())
            throw Error(ErrorCode::invalid_model, "atom names must be strings");
        atoms.push_back(a.get<std::string>());
    }
    if (atoms.size() > limits.atom_cap)
        throw Error(ErrorCode::invalid_model,
                    "model declares " + std::to_string(atoms.size()) + " atoms; cap is " +
                        std::to_string(limits.atom_cap));

    std::vector<double> table(std::size_t{1} << atoms.size(), 0.0);
    std::vector<bool> listed(table.size(), false);
    std::size_t entry = 0;
    for (const auto& world : doc["worlds"]) {
        const std::string where = "worlds[" + std::to_string(entry++) + "]";
        if (!world.is_object() || !world.contains("assign") || !world["assign"].is_object() ||
            !world.contains("p") || !world["p"].is_number())
            throw Error(ErrorCode::invalid_model, where + " needs an \"assign\" object and a numeric \"p\"");
        std::size_t index = 0;
        std::size_t assigned = 0;
        for (const auto& [name, value] : world["assign"].items()) {
            std::size_t atom = atoms.size();
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if (atoms[i] == name)
                    atom = i;
            if (atom == atoms.size())
                throw Error(ErrorCode::invalid_model, where + " assigns undeclared atom \"" + name + "\"");
            if (!value.is_boolean())
                throw Error(ErrorCode::invalid_model, where + " assigns a non-boolean to \"" + name + "\"");
            if (value.get<bool>())
                index |= std::size_t{1} << atom;
            ++assigned;
        }
        if (assigned != atoms.size())
            throw Error(ErrorCode::invalid_model, where + " does not assign every atom");
        if (listed[index])
            throw Error(ErrorCode::invalid_model, where + " duplicates an earlier assignment");
        const double p = world["p"].get<double>();
        if (p < 0.0)
            throw Error(ErrorCode::invalid_model, where + " has negative probability");
        listed[index] = true;
        table[index] = p;
    }
    return JointDistribution::from_table(std::move(atoms), std::move(table), limits);
}

JointDistribution load_model_file(const std::string& path, const ModelLimits& limits)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::invalid_model, "cannot open model file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str(), limits);
}

} // namespace belief
