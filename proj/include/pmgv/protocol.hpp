#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pmgv/optics.hpp"
#include "pmgv/rng.hpp"

namespace pmgv::protocol {

using optics::CorrelationId;
using optics::Group;

enum class Verdict { Yes, No, Invalid };

const char* name(Verdict v);

// Prepare-measure half of a round.
struct PMRecord {
  std::int64_t round_id = 0;
  int alice_bit = 1;  // Alice only prepares bit '1'; meaningful when her detection is valid
  CorrelationId bob_choice = CorrelationId::C1;
  int bob_bit = 0;  // meaningful when bob_detection_valid
  Group group_announced = Group::Psi;
  bool alice_detection_valid = false;
  bool bob_detection_valid = false;
};

// Guess-verify half of a round.
struct GVRecord {
  std::int64_t round_id = 0;
  CorrelationId alice_guess = CorrelationId::C1;
  int alice_key_bit = 0;
  Verdict verdict = Verdict::Invalid;
  std::optional<int> bob_inferred_bit;
  double dphi_used_deg = RelativePhase::kLockedDeg;
};

struct RoundRecord {
  PMRecord pm;
  GVRecord gv;
};

struct SessionResult {
  std::string alice_key;  // '0'/'1' characters
  std::string bob_key;
  std::vector<RoundRecord> rounds;
  std::optional<double> qber;  // absent when zero rounds survive sifting
  std::int64_t sifted_count = 0;
  std::int64_t raw_count = 0;
};

// --- Classical-channel message vocabulary -------------------------------
//
// These variants are the only information that crosses the public classical
// channel: session parameters, group announcements, validity flags, and the
// end-of-session digest. Correlation choices and bit values never appear.

struct SessionStart {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::int64_t n_rounds = 0;
};

struct GroupAnnounce {
  std::int64_t round_id = 0;
  Group group = Group::Psi;
};

struct ValidityReport {
  std::int64_t round_id = 0;
  bool valid = false;
};

struct SessionEnd {
  std::uint64_t key_digest = 0;
  std::int64_t sifted_count = 0;
};

using ClassicalMessage =
    std::variant<SessionStart, GroupAnnounce, ValidityReport, SessionEnd>;

// Simulation transport, not protocol information: the photons arriving at the
// receiving lab. A real deployment would replace this frame with the actual
// quantum channel; it is excluded from the classical-message secrecy class.
enum class PulseStage { Pm, Gv };

struct SimPulse {
  std::int64_t round_id = 0;
  PulseStage stage = PulseStage::Pm;
  double phase_deg = RelativePhase::kLockedDeg;
  int n_state = 0;
  int n_noise = 0;
};

using WireMessage = std::variant<SessionStart, GroupAnnounce, ValidityReport,
                                 SessionEnd, SimPulse>;

// --- Ideal-device closed forms -------------------------------------------

// Bob's deterministic prepare-measure bit for his correlation choice:
// C1 -> 0, C2 -> 1, C3 -> 0, C4 -> 1.
int pm_measure(CorrelationId bob_choice);

// Uniform guess within the announced group.
CorrelationId gv_guess(Group group, Rng& rng);

// The key bit Alice's guess produces: her kept theta1 = +45 measured with the
// guessed correlation's receive optics at that guess's relative phase.
// C1 -> 0, C2 -> 1, C3 -> 0, C4 -> 1.
int gv_alice_key_bit(CorrelationId guess);

// Bob's verification outcome in the ideal-device limit: Yes iff the guess
// matches his actual choice, and in either case the bit he infers equals
// gv_alice_key_bit(guess). Throws ProtocolViolation on cross-group inputs.
std::pair<Verdict, int> gv_verify(CorrelationId bob_actual, CorrelationId alice_guess);

// Drops rounds lacking any required detection and assembles the keys.
// Throws ProtocolViolation if a round's PM/GV records are mispaired.
SessionResult sift(std::vector<RoundRecord> rounds);

std::uint64_t key_digest(const std::string& key_bits);

}  // namespace pmgv::protocol
