#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "lrdlab/process.hpp"

namespace lrdlab {

// Process-spec JSON:
//   {"type":"fgn","H":0.8,"V":1.0}
//   {"type":"fracdiff","H":0.8,"driver":<driver>}
//   {"type":"sum","components":[{"spec":<spec>,"weight":1.0}, ...]}
//   <driver> at top level, read as a short-memory process (H = 1/2)
// with <driver> one of
//   {"type":"white","variance":1.0}
//   {"type":"arma","ar":[0.3],"ma":[0.7],"sigma2":1.0}
//   {"type":"fexp","theta":[...]}
// Unknown fields are rejected with ConfigError.

[[nodiscard]] ProcessSpec process_spec_from_json(const nlohmann::json& j);
[[nodiscard]] ProcessSpec parse_process_spec(std::string_view text);
[[nodiscard]] ShortMemorySpec driver_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const ProcessSpec& spec);
[[nodiscard]] nlohmann::json to_json(const ShortMemorySpec& driver);

}  // namespace lrdlab
