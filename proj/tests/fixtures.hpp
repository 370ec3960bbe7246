#pragma once

#include "belief/distribution.hpp"

#include <string>

namespace fixtures {

inline const std::string kTwoAtomModel = R"({
  "atoms": ["H", "E"],
  "worlds": [
    {"assign": {"H": true,  "E": true},  "p": 0.3},
    {"assign": {"H": true,  "E": false}, "p": 0.2},
    {"assign": {"H": false, "E": true},  "p": 0.1},
    {"assign": {"H": false, "E": false}, "p": 0.4}
  ]
})";

inline belief::JointDistribution two_atom()
{
    return belief::load_model(kTwoAtomModel, belief::ModelLimits{});
}

} // namespace fixtures
