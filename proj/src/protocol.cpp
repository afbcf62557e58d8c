#include "pmgv/protocol.hpp"

#include "pmgv/errors.hpp"

namespace pmgv::protocol {

const char* name(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "Yes";
    case Verdict::No:
      return "No";
    case Verdict::Invalid:
      return "Invalid";
  }
  return "?";
}

int pm_measure(CorrelationId bob_choice) {
  const double term =
      optics::interference_term(optics::bob_pm_spec(bob_choice),
                                optics::optimal_theta2(bob_choice),
                                RelativePhase::locked());
  return term > 0 ? 1 : 0;
}

CorrelationId gv_guess(Group group, Rng& rng) {
  const bool first = rng.below(2) == 0;
  if (group == Group::Psi) {
    return first ? CorrelationId::C1 : CorrelationId::C2;
  }
  return first ? CorrelationId::C3 : CorrelationId::C4;
}

int gv_alice_key_bit(CorrelationId guess) {
  const double term = optics::interference_term(
      optics::bob_pm_spec(guess), Angle(+45), optics::guess_phase(guess));
  return term > 0 ? 1 : 0;
}

std::pair<Verdict, int> gv_verify(CorrelationId bob_actual, CorrelationId alice_guess) {
  if (optics::group_of(bob_actual) != optics::group_of(alice_guess)) {
    throw ProtocolViolation("gv_verify: guess and actual choice are in different groups");
  }
  const double term =
      optics::interference_term(optics::bob_gv_spec(),
                                optics::optimal_theta2(bob_actual),
                                optics::guess_phase(alice_guess));
  const Verdict verdict = term > 0 ? Verdict::Yes : Verdict::No;
  const CorrelationId inferred_guess =
      verdict == Verdict::Yes ? bob_actual : optics::group_partner(bob_actual);
  return {verdict, gv_alice_key_bit(inferred_guess)};
}

SessionResult sift(std::vector<RoundRecord> rounds) {
  SessionResult result;
  result.raw_count = static_cast<std::int64_t>(rounds.size());
  std::int64_t mismatches = 0;
  for (const RoundRecord& r : rounds) {
    if (r.pm.round_id != r.gv.round_id) {
      throw ProtocolViolation("sift: PM/GV records are mispaired");
    }
    const bool kept = r.pm.alice_detection_valid && r.pm.bob_detection_valid &&
                      r.gv.verdict != Verdict::Invalid && r.gv.bob_inferred_bit.has_value();
    if (!kept) continue;
    result.alice_key.push_back(r.gv.alice_key_bit ? '1' : '0');
    result.bob_key.push_back(*r.gv.bob_inferred_bit ? '1' : '0');
    if (r.gv.alice_key_bit != *r.gv.bob_inferred_bit) ++mismatches;
  }
  result.sifted_count = static_cast<std::int64_t>(result.alice_key.size());
  if (result.sifted_count > 0) {
    result.qber = static_cast<double>(mismatches) / static_cast<double>(result.sifted_count);
  }
  result.rounds = std::move(rounds);
  return result;
}

std::uint64_t key_digest(const std::string& key_bits) { return fnv1a64(key_bits); }

}  // namespace pmgv::protocol
