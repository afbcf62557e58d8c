#include "pmgv/config.hpp"

#include <fstream>

#include "pmgv/errors.hpp"

namespace pmgv::config {

using nlohmann::json;
using nlohmann::ordered_json;
using optics::CorrelationId;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path, message);
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

double number_in(const json& j, const std::string& path, const char* key, double lo,
                 double hi, bool lo_open, bool hi_open) {
  const json& v = member(j, path, key);
  const std::string field = path + "." + key;
  if (!v.is_number()) fail(field, "expected a number");
  const double x = v.get<double>();
  const bool below = lo_open ? x <= lo : x < lo;
  const bool above = hi_open ? x >= hi : x > hi;
  if (below || above) {
    fail(field, "value " + std::to_string(x) + " outside " + (lo_open ? "(" : "[") +
                    std::to_string(lo) + ", " + std::to_string(hi) +
                    (hi_open ? ")" : "]"));
  }
  return x;
}

std::int64_t integer_at_least(const json& j, const std::string& path, const char* key,
                              std::int64_t lo) {
  const json& v = member(j, path, key);
  const std::string field = path + "." + key;
  if (!v.is_number_integer()) fail(field, "expected an integer");
  const std::int64_t x = v.get<std::int64_t>();
  if (x < lo) fail(field, "value must be >= " + std::to_string(lo));
  return x;
}

CorrelationId correlation_from(const std::string& s, const std::string& field) {
  if (s == "C1") return CorrelationId::C1;
  if (s == "C2") return CorrelationId::C2;
  if (s == "C3") return CorrelationId::C3;
  if (s == "C4") return CorrelationId::C4;
  fail(field, "expected one of C1, C2, C3, C4; got '" + s + "'");
}

physics::SourceModel source_from_json(const json& j, const std::string& path) {
  const std::string type = member(j, path, "type").get<std::string>();
  if (type == "attenuated_laser") {
    physics::AttenuatedLaser s;
    s.mean_ancilla = number_in(j, path, "mean_ancilla", 0.0, 1.0, true, false);
    s.mean_signal = number_in(j, path, "mean_signal", 0.0, 1.0, true, false);
    return s;
  }
  if (type == "correlated_pair") {
    physics::CorrelatedPair s;
    s.pair_prob = number_in(j, path, "pair_prob", 0.0, 1.0, true, false);
    s.noise_per_pulse = number_in(j, path, "noise_per_pulse", 0.0, 10.0, false, false);
    return s;
  }
  if (type == "deterministic_pair") {
    return physics::DeterministicPair{};
  }
  fail(path + ".type", "unknown source type '" + type + "'");
}

physics::ChannelModel channel_from_json(const json& j, const std::string& path) {
  physics::ChannelModel c;
  c.length_km = number_in(j, path, "length_km", 0.0, 1e6, false, false);
  c.loss_db_per_km = number_in(j, path, "loss_db_per_km", 0.0, 1e3, false, false);
  c.extra_loss_db = number_in(j, path, "extra_loss_db", 0.0, 1e3, false, false);
  return c;
}

physics::DetectorModel detector_from_json(const json& j, const std::string& path) {
  physics::DetectorModel d;
  d.efficiency = number_in(j, path, "efficiency", 0.0, 1.0, true, false);
  d.dark_count_prob = number_in(j, path, "dark_count_prob", 0.0, 1.0, false, true);
  return d;
}

adversary::EveStrategy eve_from_json(const json& j, const std::string& path) {
  const std::string type = member(j, path, "type").get<std::string>();
  if (type == "none") return adversary::NoEve{};
  if (type == "pns") return adversary::Pns{};
  if (type == "intercept_resend") {
    const std::string policy = member(j, path, "policy").get<std::string>();
    adversary::InterceptResend ir;
    if (policy == "uniform_over_four") {
      ir.policy = adversary::GuessPolicy::UniformOverFour;
    } else if (policy == "uniform_within_group") {
      ir.policy = adversary::GuessPolicy::UniformWithinAnnouncedGroup;
    } else if (policy == "match_preparation") {
      ir.policy = adversary::GuessPolicy::MatchPreparation;
    } else {
      fail(path + ".policy", "unknown policy '" + policy + "'");
    }
    return ir;
  }
  fail(path + ".type", "unknown adversary type '" + type + "'");
}

ScriptedPlan scripted_from_json(const json& j, const std::string& path,
                                std::int64_t n_rounds) {
  ScriptedPlan plan;
  if (j.contains("bob_choices")) {
    const std::string field = path + ".bob_choices";
    for (const auto& v : j.at("bob_choices")) {
      plan.bob_choices.push_back(correlation_from(v.get<std::string>(), field));
    }
    if (static_cast<std::int64_t>(plan.bob_choices.size()) != n_rounds) {
      fail(field, "length must equal n_rounds");
    }
  }
  if (j.contains("alice_guesses")) {
    const std::string field = path + ".alice_guesses";
    for (const auto& v : j.at("alice_guesses")) {
      plan.alice_guesses.push_back(correlation_from(v.get<std::string>(), field));
    }
    if (static_cast<std::int64_t>(plan.alice_guesses.size()) != n_rounds) {
      fail(field, "length must equal n_rounds");
    }
    if (plan.bob_choices.empty()) {
      fail(field, "alice_guesses requires bob_choices (guesses must stay in the announced group)");
    }
    for (std::size_t i = 0; i < plan.alice_guesses.size(); ++i) {
      if (optics::group_of(plan.alice_guesses[i]) != optics::group_of(plan.bob_choices[i])) {
        fail(field + "[" + std::to_string(i) + "]",
             "guess is outside the group of the scripted choice");
      }
    }
  }
  if (j.contains("round_valid")) {
    const std::string field = path + ".round_valid";
    for (const auto& v : j.at("round_valid")) {
      if (!v.is_boolean()) fail(field, "expected booleans");
      plan.round_valid.push_back(v.get<bool>());
    }
    if (static_cast<std::int64_t>(plan.round_valid.size()) != n_rounds) {
      fail(field, "length must equal n_rounds");
    }
  }
  return plan;
}

}  // namespace

SessionConfig config_from_json(const json& j) {
  SessionConfig c;
  c.n_rounds = integer_at_least(j, "config", "n_rounds", 0);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) fail("config.seed", "expected an integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("source")) c.source = source_from_json(j.at("source"), "config.source");
  if (j.contains("channel")) c.channel = channel_from_json(j.at("channel"), "config.channel");
  if (j.contains("detectors")) {
    const json& d = j.at("detectors");
    if (d.contains("alice")) c.alice_detector = detector_from_json(d.at("alice"), "config.detectors.alice");
    if (d.contains("bob")) c.bob_detector = detector_from_json(d.at("bob"), "config.detectors.bob");
  }
  if (j.contains("adversary")) c.eve = eve_from_json(j.at("adversary"), "config.adversary");
  if (j.contains("scripted")) {
    c.scripted = scripted_from_json(j.at("scripted"), "config.scripted", c.n_rounds);
  }
  if (j.contains("rate_inputs")) {
    const json& r = j.at("rate_inputs");
    c.pulse_rate_hz = number_in(r, "config.rate_inputs", "pulse_rate_hz", 0.0, 1e15, true, false);
    c.post_processing_factor =
        number_in(r, "config.rate_inputs", "post_processing_factor", 0.0, 1.0, true, false);
  }
  return c;
}

const char* policy_name(adversary::GuessPolicy p) {
  switch (p) {
    case adversary::GuessPolicy::UniformOverFour:
      return "uniform_over_four";
    case adversary::GuessPolicy::UniformWithinAnnouncedGroup:
      return "uniform_within_group";
    case adversary::GuessPolicy::MatchPreparation:
      return "match_preparation";
  }
  return "?";
}

ordered_json config_to_json(const SessionConfig& c) {
  ordered_json j;
  j["n_rounds"] = c.n_rounds;
  j["seed"] = c.seed;

  ordered_json source;
  if (const auto* laser = std::get_if<physics::AttenuatedLaser>(&c.source)) {
    source["type"] = "attenuated_laser";
    source["mean_ancilla"] = laser->mean_ancilla;
    source["mean_signal"] = laser->mean_signal;
  } else if (const auto* pair = std::get_if<physics::CorrelatedPair>(&c.source)) {
    source["type"] = "correlated_pair";
    source["pair_prob"] = pair->pair_prob;
    source["noise_per_pulse"] = pair->noise_per_pulse;
  } else {
    source["type"] = "deterministic_pair";
  }
  j["source"] = source;

  j["channel"] = {{"length_km", c.channel.length_km},
                  {"loss_db_per_km", c.channel.loss_db_per_km},
                  {"extra_loss_db", c.channel.extra_loss_db}};
  j["detectors"] = {
      {"alice",
       {{"efficiency", c.alice_detector.efficiency},
        {"dark_count_prob", c.alice_detector.dark_count_prob}}},
      {"bob",
       {{"efficiency", c.bob_detector.efficiency},
        {"dark_count_prob", c.bob_detector.dark_count_prob}}}};

  ordered_json eve;
  if (std::holds_alternative<adversary::NoEve>(c.eve)) {
    eve["type"] = "none";
  } else if (std::holds_alternative<adversary::Pns>(c.eve)) {
    eve["type"] = "pns";
  } else {
    eve["type"] = "intercept_resend";
    eve["policy"] = policy_name(std::get<adversary::InterceptResend>(c.eve).policy);
  }
  j["adversary"] = eve;

  if (!c.scripted.empty()) {
    ordered_json s;
    if (!c.scripted.bob_choices.empty()) {
      auto arr = ordered_json::array();
      for (auto id : c.scripted.bob_choices) arr.push_back(optics::name(id));
      s["bob_choices"] = arr;
    }
    if (!c.scripted.alice_guesses.empty()) {
      auto arr = ordered_json::array();
      for (auto id : c.scripted.alice_guesses) arr.push_back(optics::name(id));
      s["alice_guesses"] = arr;
    }
    if (!c.scripted.round_valid.empty()) {
      auto arr = ordered_json::array();
      for (bool b : c.scripted.round_valid) arr.push_back(b);
      s["round_valid"] = arr;
    }
    j["scripted"] = s;
  }

  j["rate_inputs"] = {{"pulse_rate_hz", c.pulse_rate_hz},
                      {"post_processing_factor", c.post_processing_factor}};
  return j;
}

SessionConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open config file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(path, std::string("not valid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("config")) {
    // A report file; rerun from its embedded resolved config.
    return config_from_json(j.at("config"));
  }
  return config_from_json(j);
}

std::uint64_t config_hash(const SessionConfig& c) {
  return fnv1a64(config_to_json(c).dump());
}

}  // namespace pmgv::config
