#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmgv/adversary.hpp"
#include "pmgv/optics.hpp"
#include "pmgv/physics.hpp"

namespace pmgv::config {

// Forced per-round sequences, used to reproduce worked sessions exactly.
// Empty vectors mean "draw randomly" / "let the physics decide".
struct ScriptedPlan {
  std::vector<optics::CorrelationId> bob_choices;
  std::vector<optics::CorrelationId> alice_guesses;
  std::vector<bool> round_valid;  // false forces the verify photon to be lost

  bool empty() const {
    return bob_choices.empty() && alice_guesses.empty() && round_valid.empty();
  }
};

struct SessionConfig {
  std::int64_t n_rounds = 0;
  std::uint64_t seed = 1;
  physics::SourceModel source = physics::DeterministicPair{};
  physics::ChannelModel channel{};
  physics::DetectorModel alice_detector{};
  physics::DetectorModel bob_detector{};
  adversary::EveStrategy eve = adversary::NoEve{};
  ScriptedPlan scripted{};
  double pulse_rate_hz = 1.0e9;
  double post_processing_factor = 0.25;
};

// Parses and validates; throws ConfigError naming the offending field path.
SessionConfig config_from_json(const nlohmann::json& j);

// Canonical resolved form: every field explicit, stable key order.
nlohmann::ordered_json config_to_json(const SessionConfig& c);

// Loads a config file, accepting either a bare config object or a previously
// emitted report (whose resolved config is embedded under "config").
SessionConfig load_config_file(const std::string& path);

// Hash of the canonical serialized form; both endpoints of a networked
// session must agree on it before round 0.
std::uint64_t config_hash(const SessionConfig& c);

const char* policy_name(adversary::GuessPolicy p);

}  // namespace pmgv::config
