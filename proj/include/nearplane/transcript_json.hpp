#pragma once

#include <json.hpp>

#include "nearplane/protocols.hpp"

namespace nearplane {

/// {"messages":[{"sender","symbol","ideal_bits"}...],"rounds","total_bits",
///  "decision":[u1,u2],"halted"} with keys in that order.
nlohmann::ordered_json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::ordered_json& j);

}  // namespace nearplane
