#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmgv/adversary.hpp"
#include "pmgv/config.hpp"
#include "pmgv/physics.hpp"
#include "pmgv/protocol.hpp"

namespace pmgv::protocol {

// Alice's per-session state machine. She owns the photon source, the
// simulated quantum channel (including the adversary tapping it), and her
// own detector; everything Bob-side reaches her only as messages.
//
// Per-round call order, identical for in-process and networked sessions:
//   begin_round -> on_group -> gv_pulse -> on_bob_validity -> validity_report
class AliceSession {
 public:
  explicit AliceSession(config::SessionConfig cfg);

  SimPulse begin_round(std::int64_t round_id);
  void on_group(const GroupAnnounce& msg);
  SimPulse gv_pulse(std::int64_t round_id);
  void on_bob_validity(const ValidityReport& msg);
  ValidityReport validity_report(std::int64_t round_id) const;

  struct RoundView {
    std::int64_t round_id = 0;
    bool herald = false;  // ancilla seen in her '+' detector
    Group group_announced = Group::Psi;
    CorrelationId guess = CorrelationId::C1;
    int key_bit = 0;
    double dphi_deg = RelativePhase::kLockedDeg;
    bool bob_reported_valid = false;
  };

  const std::vector<RoundView>& rounds() const { return rounds_; }
  const std::vector<adversary::EveRecord>& eve_records() const {
    return eve_.records();
  }
  std::string sifted_key() const;

 private:
  enum class Phase { Idle, AwaitGroup, AwaitGvSend, AwaitBobValidity, Done };

  config::SessionConfig cfg_;
  adversary::Eve eve_;
  Phase phase_ = Phase::Idle;
  RoundView current_{};
  std::vector<RoundView> rounds_;
};

// Bob's per-session state machine: his correlation choices, his detector,
// and the verify logic. His choices and measured bits never leave this class
// except as group announcements and validity flags.
class BobSession {
 public:
  explicit BobSession(config::SessionConfig cfg);

  GroupAnnounce on_pm_pulse(const SimPulse& pulse);
  ValidityReport on_gv_pulse(const SimPulse& pulse);
  void on_alice_validity(const ValidityReport& msg);

  struct RoundView {
    std::int64_t round_id = 0;
    CorrelationId choice = CorrelationId::C1;
    int pm_bit = 0;
    bool pm_valid = false;
    Verdict verdict = Verdict::Invalid;
    std::optional<int> inferred_bit;
    bool alice_reported_valid = false;
  };

  const std::vector<RoundView>& rounds() const { return rounds_; }
  std::string sifted_key() const;

 private:
  enum class Phase { AwaitPm, AwaitGv, AwaitAliceValidity };

  config::SessionConfig cfg_;
  Phase phase_ = Phase::AwaitPm;
  RoundView current_{};
  std::vector<RoundView> rounds_;
};

std::vector<RoundRecord> merge_views(const std::vector<AliceSession::RoundView>& alice,
                                     const std::vector<BobSession::RoundView>& bob);

struct SessionRun {
  SessionResult result;
  std::vector<adversary::EveRecord> eve_records;
};

// Runs the full session in-process, driving both state machines in lockstep.
// Deterministic for a fixed config (all randomness flows from named
// per-round substreams of the config seed).
SessionRun run_session_full(const config::SessionConfig& cfg);

inline SessionResult run_session(const config::SessionConfig& cfg) {
  return run_session_full(cfg).result;
}

}  // namespace pmgv::protocol
