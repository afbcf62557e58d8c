#include "pmgv/adversary.hpp"

#include <algorithm>
#include <unordered_set>

namespace pmgv::adversary {

PnsTap pns_intercept(const physics::PulseOutcome& pulse) {
  PnsTap tap;
  tap.forwarded = pulse;
  if (pulse.n_signal_state >= 2) {
    tap.forwarded.n_signal_state -= 1;
    tap.photons_stored = 1;
    tap.bypass_channel_loss = true;
  }
  return tap;
}

ResendResult intercept_resend(RelativePhase incoming, CorrelationId eve_choice, Rng& rng) {
  const double term = optics::interference_term(optics::bob_pm_spec(eve_choice),
                                                optics::optimal_theta2(eve_choice),
                                                incoming);
  ResendResult out;
  out.eve_bit = rng.bernoulli(optics::detection_prob_plus(term)) ? 1 : 0;
  out.resent_phase = optics::guess_phase(eve_choice);
  out.disturbed = out.resent_phase.degrees() != incoming.degrees();
  return out;
}

Eve::Eve(EveStrategy strategy, std::uint64_t master_seed)
    : strategy_(strategy), master_seed_(master_seed) {}

EveRecord& Eve::record_for(std::int64_t round_id) {
  if (!records_.empty() && records_.back().round_id == round_id) {
    return records_.back();
  }
  records_.push_back(EveRecord{round_id, 0, std::nullopt, false, false});
  return records_.back();
}

CorrelationId Eve::pick_choice(protocol::PulseStage stage,
                               std::optional<Group> announced_group,
                               RelativePhase incoming, Rng& rng) const {
  const auto& ir = std::get<InterceptResend>(strategy_);
  switch (ir.policy) {
    case GuessPolicy::UniformOverFour:
      break;
    case GuessPolicy::UniformWithinAnnouncedGroup:
      // The group is public only from the announcement onward; the PM pulse
      // predates it, so Eve falls back to a blind choice there.
      if (stage == protocol::PulseStage::Gv && announced_group.has_value()) {
        const bool first = rng.below(2) == 0;
        if (*announced_group == Group::Psi) {
          return first ? CorrelationId::C1 : CorrelationId::C2;
        }
        return first ? CorrelationId::C3 : CorrelationId::C4;
      }
      break;
    case GuessPolicy::MatchPreparation: {
      const bool locked = incoming.degrees() == RelativePhase::kLockedDeg;
      if (announced_group.has_value() && *announced_group == Group::Phi) {
        return locked ? CorrelationId::C4 : CorrelationId::C3;
      }
      return locked ? CorrelationId::C1 : CorrelationId::C2;
    }
  }
  switch (rng.below(4)) {
    case 0:
      return CorrelationId::C1;
    case 1:
      return CorrelationId::C2;
    case 2:
      return CorrelationId::C3;
    default:
      return CorrelationId::C4;
  }
}

Eve::TappedPulse Eve::tap(std::int64_t round_id, protocol::PulseStage stage,
                          int n_state, int n_noise, RelativePhase phase,
                          std::optional<Group> announced_group) {
  TappedPulse out;
  out.n_state = n_state;
  out.n_noise = n_noise;
  out.phase = phase;

  if (std::holds_alternative<NoEve>(strategy_)) {
    return out;
  }

  if (std::holds_alternative<Pns>(strategy_)) {
    physics::PulseOutcome pulse;
    pulse.n_signal_state = n_state;
    pulse.n_signal_noise = n_noise;
    const PnsTap tap = pns_intercept(pulse);
    out.n_state = tap.forwarded.n_signal_state;
    out.n_noise = tap.forwarded.n_signal_noise;
    out.bypass_channel_loss = tap.bypass_channel_loss;
    if (tap.photons_stored > 0) {
      record_for(round_id).photons_stored += tap.photons_stored;
    }
    return out;
  }

  // Intercept-resend acts on every transmitted state photon.
  if (n_state == 0) return out;
  Rng rng = substream(master_seed_,
                      stage == protocol::PulseStage::Pm ? "eve_pm" : "eve_gv",
                      static_cast<std::uint64_t>(round_id));
  const CorrelationId choice = pick_choice(stage, announced_group, phase, rng);
  const ResendResult resend = intercept_resend(phase, choice, rng);
  out.phase = resend.resent_phase;
  out.bypass_channel_loss = true;  // Eve's own equipment is lossless

  EveRecord& rec = record_for(round_id);
  rec.disturbed = rec.disturbed || resend.disturbed;

  if (stage == protocol::PulseStage::Gv && announced_group.has_value()) {
    // Invert her outcome: with which relative phase would her apparatus have
    // produced this bit deterministically? At optimal angles the two phase
    // hypotheses give distinct certain outcomes, so the announced group pins
    // Alice's guess and with it the key bit.
    const auto spec = optics::bob_pm_spec(choice);
    const Angle theta = optics::optimal_theta2(choice);
    const double t_locked = optics::interference_term(spec, theta, RelativePhase::locked());
    const double t_shifted = optics::interference_term(spec, theta, RelativePhase::shifted());
    const bool deterministic =
        std::abs(std::abs(t_locked) - 1.0) < 1e-12 &&
        std::abs(std::abs(t_shifted) - 1.0) < 1e-12 && t_locked * t_shifted < 0;
    if (deterministic) {
      const int sign = resend.eve_bit == 1 ? +1 : -1;
      const bool was_locked = static_cast<int>(t_locked) == sign;
      CorrelationId guessed;
      if (*announced_group == Group::Psi) {
        guessed = was_locked ? CorrelationId::C1 : CorrelationId::C2;
      } else {
        guessed = was_locked ? CorrelationId::C4 : CorrelationId::C3;
      }
      rec.bit_estimate = protocol::gv_alice_key_bit(guessed);
      rec.knows_bit = true;
    } else {
      rec.bit_estimate = resend.eve_bit;
    }
  }
  return out;
}

void Eve::grant_stored_knowledge(std::int64_t round_id, int alice_key_bit) {
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->round_id == round_id) {
      if (it->photons_stored > 0) {
        it->knows_bit = true;
        it->bit_estimate = alice_key_bit;
      }
      return;
    }
    if (it->round_id < round_id) return;
  }
}

LeakageSummary leakage_summary(const std::vector<EveRecord>& records,
                               const protocol::SessionResult& session,
                               std::optional<double> baseline_qber) {
  std::unordered_set<std::int64_t> sifted_rounds;
  for (const auto& r : session.rounds) {
    const bool kept = r.pm.alice_detection_valid && r.pm.bob_detection_valid &&
                      r.gv.verdict != protocol::Verdict::Invalid &&
                      r.gv.bob_inferred_bit.has_value();
    if (kept) sifted_rounds.insert(r.pm.round_id);
  }

  LeakageSummary out;
  for (const EveRecord& rec : records) {
    if (rec.knows_bit && sifted_rounds.count(rec.round_id) > 0) ++out.leaked_bits;
  }
  if (session.sifted_count > 0) {
    out.leaked_fraction = static_cast<double>(out.leaked_bits) /
                          static_cast<double>(session.sifted_count);
  }
  const double qber = session.qber.value_or(0.0);
  out.induced_qber = qber - baseline_qber.value_or(0.0);
  return out;
}

}  // namespace pmgv::adversary
