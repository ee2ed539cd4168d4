#include "nearplane/transcript_json.hpp"

#include <stdexcept>

namespace nearplane {

nlohmann::ordered_json to_json(const Transcript& t) {
  nlohmann::ordered_json j;
  auto messages = nlohmann::ordered_json::array();
  for (const Message& m : t.messages) {
    nlohmann::ordered_json jm;
    jm["sender"] = to_string(m.sender);
    jm["symbol"] = m.symbol;
    jm["ideal_bits"] = m.ideal_bits;
    messages.push_back(std::move(jm));
  }
  j["messages"] = std::move(messages);
  j["rounds"] = t.rounds;
  j["total_bits"] = t.total_bits;
  j["decision"] = {t.decision.u1, t.decision.u2};
  j["halted"] = t.halted;
  return j;
}

Transcript transcript_from_json(const nlohmann::ordered_json& j) {
  Transcript t;
  for (const auto& jm : j.at("messages")) {
    const auto sender = jm.at("sender").get<std::string>();
    if (sender != "S1" && sender != "S2") throw std::invalid_argument("unknown sender " + sender);
    t.messages.push_back(
        {sender == "S1" ? Sender::S1 : Sender::S2, jm.at("symbol").get<int>(), jm.at("ideal_bits").get<double>()});
  }
  t.rounds = j.at("rounds").get<int>();
  t.total_bits = j.at("total_bits").get<double>();
  t.decision = {j.at("decision").at(0).get<long>(), j.at("decision").at(1).get<long>()};
  t.halted = j.at("halted").get<bool>();
  return t;
}

}  // namespace nearplane
