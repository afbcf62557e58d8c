#include "pmgv/session.hpp"

#include <utility>

#include "pmgv/errors.hpp"

namespace pmgv::protocol {

namespace {

using adversary::Eve;
using optics::detection_prob_plus;
using optics::interference_term;
using physics::ClickOutcome;

bool single_click(ClickOutcome o) {
  return o == ClickOutcome::ClickPlus || o == ClickOutcome::ClickMinus;
}

}  // namespace

AliceSession::AliceSession(config::SessionConfig cfg)
    : cfg_(std::move(cfg)), eve_(cfg_.eve, cfg_.seed) {}

SimPulse AliceSession::begin_round(std::int64_t round_id) {
  if (phase_ != Phase::Idle && phase_ != Phase::Done) {
    throw ProtocolViolation("AliceSession: begin_round out of order");
  }
  if (!rounds_.empty() && round_id != rounds_.back().round_id + 1) {
    throw ProtocolViolation("AliceSession: round ids must increase by one");
  }
  current_ = RoundView{};
  current_.round_id = round_id;

  const auto idx = static_cast<std::uint64_t>(round_id);
  Rng source_rng = substream(cfg_.seed, "source", idx);
  const physics::PulseOutcome pulse = physics::sample_pulse(cfg_.source, source_rng);

  // Her heralding measurement: theta1 = +45 at the locked phase puts every
  // ancilla photon in the '+' port.
  Rng det_rng = substream(cfg_.seed, "alice_detector", idx);
  const double p_plus = detection_prob_plus(
      interference_term(optics::alice_pm_spec(), Angle(+45), RelativePhase::locked()));
  const ClickOutcome herald =
      physics::detect(pulse.n_ancilla, p_plus, cfg_.alice_detector, det_rng);
  current_.herald = herald == ClickOutcome::ClickPlus;

  auto tapped = eve_.tap(round_id, PulseStage::Pm, pulse.n_signal_state,
                         pulse.n_signal_noise, RelativePhase::locked(), std::nullopt);
  int n_state = tapped.n_state;
  int n_noise = tapped.n_noise;
  if (!tapped.bypass_channel_loss) {
    Rng ch_rng = substream(cfg_.seed, "channel_pm", idx);
    n_state = physics::transmit(n_state, cfg_.channel, ch_rng);
    n_noise = physics::transmit(n_noise, cfg_.channel, ch_rng);
  }

  phase_ = Phase::AwaitGroup;
  return SimPulse{round_id, PulseStage::Pm, tapped.phase.degrees(), n_state, n_noise};
}

void AliceSession::on_group(const GroupAnnounce& msg) {
  if (phase_ != Phase::AwaitGroup || msg.round_id != current_.round_id) {
    throw ProtocolViolation("AliceSession: unexpected group announcement");
  }
  current_.group_announced = msg.group;

  const auto idx = static_cast<std::uint64_t>(current_.round_id);
  if (!cfg_.scripted.alice_guesses.empty()) {
    current_.guess = cfg_.scripted.alice_guesses.at(static_cast<std::size_t>(idx));
    if (optics::group_of(current_.guess) != msg.group) {
      throw ProtocolViolation("AliceSession: scripted guess outside announced group");
    }
  } else {
    Rng guess_rng = substream(cfg_.seed, "alice_guess", idx);
    current_.guess = gv_guess(msg.group, guess_rng);
  }
  // She measures her kept ancilla with the guessed correlation's receive
  // optics; at theta1 = +45 the outcome is deterministic.
  current_.key_bit = gv_alice_key_bit(current_.guess);
  current_.dphi_deg = optics::guess_phase(current_.guess).degrees();
  phase_ = Phase::AwaitGvSend;
}

SimPulse AliceSession::gv_pulse(std::int64_t round_id) {
  if (phase_ != Phase::AwaitGvSend || round_id != current_.round_id) {
    throw ProtocolViolation("AliceSession: gv_pulse out of order");
  }
  const auto idx = static_cast<std::uint64_t>(round_id);

  // The verify photon is prepared off her herald, so it is a single photon;
  // without the herald there is nothing phase-locked to send.
  int n_state = current_.herald ? 1 : 0;
  if (!cfg_.scripted.round_valid.empty() &&
      !cfg_.scripted.round_valid.at(static_cast<std::size_t>(idx))) {
    n_state = 0;  // scripted loss of the verify photon
  }

  auto tapped = eve_.tap(round_id, PulseStage::Gv, n_state, 0,
                         RelativePhase::of_degrees(current_.dphi_deg),
                         current_.group_announced);
  n_state = tapped.n_state;
  if (!tapped.bypass_channel_loss) {
    Rng ch_rng = substream(cfg_.seed, "channel_gv", idx);
    n_state = physics::transmit(n_state, cfg_.channel, ch_rng);
  }

  phase_ = Phase::AwaitBobValidity;
  return SimPulse{round_id, PulseStage::Gv, tapped.phase.degrees(), n_state, 0};
}

void AliceSession::on_bob_validity(const ValidityReport& msg) {
  if (phase_ != Phase::AwaitBobValidity || msg.round_id != current_.round_id) {
    throw ProtocolViolation("AliceSession: unexpected validity report");
  }
  current_.bob_reported_valid = msg.valid;
  eve_.grant_stored_knowledge(current_.round_id, current_.key_bit);
  rounds_.push_back(current_);
  phase_ = Phase::Done;
}

ValidityReport AliceSession::validity_report(std::int64_t round_id) const {
  if (phase_ != Phase::Done || rounds_.empty() || rounds_.back().round_id != round_id) {
    throw ProtocolViolation("AliceSession: validity_report out of order");
  }
  return ValidityReport{round_id, rounds_.back().herald};
}

std::string AliceSession::sifted_key() const {
  std::string key;
  for (const RoundView& r : rounds_) {
    if (r.herald && r.bob_reported_valid) key.push_back(r.key_bit ? '1' : '0');
  }
  return key;
}

BobSession::BobSession(config::SessionConfig cfg) : cfg_(std::move(cfg)) {}

GroupAnnounce BobSession::on_pm_pulse(const SimPulse& pulse) {
  if (phase_ != Phase::AwaitPm || pulse.stage != PulseStage::Pm) {
    throw ProtocolViolation("BobSession: unexpected PM pulse");
  }
  const std::int64_t expected = static_cast<std::int64_t>(rounds_.size());
  if (pulse.round_id != expected) {
    throw ProtocolViolation("BobSession: PM pulse round id out of order");
  }
  current_ = RoundView{};
  current_.round_id = pulse.round_id;

  const auto idx = static_cast<std::uint64_t>(pulse.round_id);
  if (!cfg_.scripted.bob_choices.empty()) {
    current_.choice = cfg_.scripted.bob_choices.at(static_cast<std::size_t>(idx));
  } else {
    Rng choice_rng = substream(cfg_.seed, "bob_choice", idx);
    current_.choice = static_cast<CorrelationId>(choice_rng.below(4));
  }

  const double p_plus = detection_prob_plus(
      interference_term(optics::bob_pm_spec(current_.choice),
                        optics::optimal_theta2(current_.choice),
                        RelativePhase::of_degrees(pulse.phase_deg)));
  Rng det_rng = substream(cfg_.seed, "bob_detector_pm", idx);
  const ClickOutcome outcome = physics::detect_mixed(
      pulse.n_state, p_plus, pulse.n_noise, cfg_.bob_detector, det_rng);
  current_.pm_valid = single_click(outcome);
  current_.pm_bit = outcome == ClickOutcome::ClickPlus ? 1 : 0;

  phase_ = Phase::AwaitGv;
  return GroupAnnounce{pulse.round_id, optics::group_of(current_.choice)};
}

ValidityReport BobSession::on_gv_pulse(const SimPulse& pulse) {
  if (phase_ != Phase::AwaitGv || pulse.stage != PulseStage::Gv ||
      pulse.round_id != current_.round_id) {
    throw ProtocolViolation("BobSession: unexpected GV pulse");
  }
  const auto idx = static_cast<std::uint64_t>(pulse.round_id);

  // The quarter-wave plate replaces his preparation optics; his kept
  // projection angle does the verifying.
  const double p_plus = detection_prob_plus(
      interference_term(optics::bob_gv_spec(),
                        optics::optimal_theta2(current_.choice),
                        RelativePhase::of_degrees(pulse.phase_deg)));
  Rng det_rng = substream(cfg_.seed, "bob_detector_gv", idx);
  const ClickOutcome outcome = physics::detect_mixed(
      pulse.n_state, p_plus, pulse.n_noise, cfg_.bob_detector, det_rng);

  if (outcome == ClickOutcome::ClickPlus) {
    current_.verdict = Verdict::Yes;
    current_.inferred_bit = gv_alice_key_bit(current_.choice);
  } else if (outcome == ClickOutcome::ClickMinus) {
    current_.verdict = Verdict::No;
    current_.inferred_bit = gv_alice_key_bit(optics::group_partner(current_.choice));
  } else {
    current_.verdict = Verdict::Invalid;
    current_.inferred_bit.reset();
  }

  phase_ = Phase::AwaitAliceValidity;
  return ValidityReport{pulse.round_id,
                        current_.pm_valid && current_.verdict != Verdict::Invalid};
}

void BobSession::on_alice_validity(const ValidityReport& msg) {
  if (phase_ != Phase::AwaitAliceValidity || msg.round_id != current_.round_id) {
    throw ProtocolViolation("BobSession: unexpected validity report");
  }
  current_.alice_reported_valid = msg.valid;
  rounds_.push_back(current_);
  phase_ = Phase::AwaitPm;
}

std::string BobSession::sifted_key() const {
  std::string key;
  for (const RoundView& r : rounds_) {
    const bool kept = r.alice_reported_valid && r.pm_valid &&
                      r.verdict != Verdict::Invalid && r.inferred_bit.has_value();
    if (kept) key.push_back(*r.inferred_bit ? '1' : '0');
  }
  return key;
}

std::vector<RoundRecord> merge_views(const std::vector<AliceSession::RoundView>& alice,
                                     const std::vector<BobSession::RoundView>& bob) {
  if (alice.size() != bob.size()) {
    throw ProtocolViolation("merge_views: mismatched round counts");
  }
  std::vector<RoundRecord> rounds;
  rounds.reserve(alice.size());
  for (std::size_t i = 0; i < alice.size(); ++i) {
    const auto& a = alice[i];
    const auto& b = bob[i];
    if (a.round_id != b.round_id) {
      throw ProtocolViolation("merge_views: mismatched round ids");
    }
    RoundRecord r;
    r.pm.round_id = a.round_id;
    r.pm.alice_bit = 1;
    r.pm.bob_choice = b.choice;
    r.pm.bob_bit = b.pm_bit;
    r.pm.group_announced = a.group_announced;
    r.pm.alice_detection_valid = a.herald;
    r.pm.bob_detection_valid = b.pm_valid;
    r.gv.round_id = a.round_id;
    r.gv.alice_guess = a.guess;
    r.gv.alice_key_bit = a.key_bit;
    r.gv.verdict = b.verdict;
    r.gv.bob_inferred_bit = b.inferred_bit;
    r.gv.dphi_used_deg = a.dphi_deg;
    rounds.push_back(r);
  }
  return rounds;
}

SessionRun run_session_full(const config::SessionConfig& cfg) {
  AliceSession alice(cfg);
  BobSession bob(cfg);
  for (std::int64_t r = 0; r < cfg.n_rounds; ++r) {
    const SimPulse pm = alice.begin_round(r);
    const GroupAnnounce group = bob.on_pm_pulse(pm);
    alice.on_group(group);
    const SimPulse gv = alice.gv_pulse(r);
    const ValidityReport bob_ok = bob.on_gv_pulse(gv);
    alice.on_bob_validity(bob_ok);
    const ValidityReport alice_ok = alice.validity_report(r);
    bob.on_alice_validity(alice_ok);
  }
  SessionRun run;
  run.result = sift(merge_views(alice.rounds(), bob.rounds()));
  run.eve_records = alice.eve_records();
  return run;
}

}  // namespace pmgv::protocol
