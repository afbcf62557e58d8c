#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pmgv/optics.hpp"
#include "pmgv/physics.hpp"
#include "pmgv/protocol.hpp"
#include "pmgv/rng.hpp"

namespace pmgv::adversary {

using optics::CorrelationId;
using optics::Group;

// How intercept-resend Eve picks the correlation she measures with.
// MatchPreparation is a diagnostic mode: Eve measures in the basis the state
// was actually prepared in, which makes her resend indistinguishable from the
// original. It exercises the zero-disturbance limit; a real eavesdropper has
// no access to that information.
enum class GuessPolicy { UniformOverFour, UniformWithinAnnouncedGroup, MatchPreparation };

struct NoEve {};
struct Pns {};
struct InterceptResend {
  GuessPolicy policy = GuessPolicy::UniformOverFour;
};

using EveStrategy = std::variant<NoEve, Pns, InterceptResend>;

struct EveRecord {
  std::int64_t round_id = 0;
  int photons_stored = 0;
  std::optional<int> bit_estimate;
  bool disturbed = false;
  // Certain knowledge of Alice's key bit: granted outright on stored-photon
  // rounds (worst case), or earned by a deterministic guess-verify inference.
  bool knows_bit = false;
};

// Photon-number splitting on one pulse: when two or more phase-carrying
// photons are present Eve stores one and forwards the rest losslessly;
// otherwise the pulse passes unchanged. Noise photons carry no key
// information and are never worth storing.
struct PnsTap {
  physics::PulseOutcome forwarded;
  int photons_stored = 0;
  bool bypass_channel_loss = false;
};

PnsTap pns_intercept(const physics::PulseOutcome& pulse);

// Intercept-resend on one in-flight state: Eve measures with her chosen
// correlation's receive optics at its optimal angle and resends a fresh state
// carrying her choice's relative phase.
struct ResendResult {
  RelativePhase resent_phase = RelativePhase::locked();
  int eve_bit = 0;
  bool disturbed = false;
};

ResendResult intercept_resend(RelativePhase incoming, CorrelationId eve_choice, Rng& rng);

// Per-session adversary. Lives on the sending side of the simulated quantum
// channel and taps every transmitted signal pulse.
class Eve {
 public:
  Eve(EveStrategy strategy, std::uint64_t master_seed);

  struct TappedPulse {
    int n_state = 0;
    int n_noise = 0;
    RelativePhase phase = RelativePhase::locked();
    bool bypass_channel_loss = false;
  };

  // stage Pm carries the public locked phase; stage Gv carries Alice's
  // guess-dependent phase, and the group is announced by then.
  TappedPulse tap(std::int64_t round_id, protocol::PulseStage stage, int n_state,
                  int n_noise, RelativePhase phase,
                  std::optional<Group> announced_group);

  // Worst-case accounting for stored photons: once the groups are public Eve
  // is credited with the round's key bit.
  void grant_stored_knowledge(std::int64_t round_id, int alice_key_bit);

  bool active() const { return !std::holds_alternative<NoEve>(strategy_); }
  const std::vector<EveRecord>& records() const { return records_; }

 private:
  EveRecord& record_for(std::int64_t round_id);
  CorrelationId pick_choice(protocol::PulseStage stage,
                            std::optional<Group> announced_group,
                            RelativePhase incoming, Rng& rng) const;

  EveStrategy strategy_;
  std::uint64_t master_seed_;
  std::vector<EveRecord> records_;
};

struct LeakageSummary {
  std::int64_t leaked_bits = 0;
  double leaked_fraction = 0.0;
  double induced_qber = 0.0;
};

// Counts sifted rounds whose key bit Eve knows with certainty. The induced
// QBER is the difference against a baseline run without Eve at the same seed
// (0 when no baseline is supplied and the session itself shows no errors).
LeakageSummary leakage_summary(const std::vector<EveRecord>& records,
                               const protocol::SessionResult& session,
                               std::optional<double> baseline_qber = std::nullopt);

}  // namespace pmgv::adversary
