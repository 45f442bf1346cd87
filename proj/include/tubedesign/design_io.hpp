#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "tubedesign/bases.hpp"
#include "tubedesign/moment_cone.hpp"

namespace tubedesign {

// Design file schema:
// {
//   "domain": "fourier" | "real",
//   "model": {"kind": "fourier", "n": 3}
//          | {"kind": "weighted-polynomial", "n": 3, "variance": [a,b,c,d]},
//   "atoms": [{"x": number | "inf" | "-inf", "w": number}, ...]
// }
std::pair<Model, Design> designFromJson(const nlohmann::json &j);
nlohmann::json designToJson(const Model &model, const Design &design);

// Reads and validates a design file; parse errors carry line/column info.
std::pair<Model, Design> parseDesignFile(const std::string &path);

} // namespace tubedesign
