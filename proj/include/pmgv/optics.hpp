#pragma once

#include <cstdint>

#include "pmgv/angle.hpp"
#include "pmgv/rng.hpp"

namespace pmgv::optics {

// The four bi-partite correlation functions and their public grouping.
//   C1 = -cos 2(theta1 - theta2)    group Psi
//   C2 = +cos 2(theta1 + theta2)    group Psi
//   C3 = -cos 2(theta1 + theta2)    group Phi
//   C4 = +cos 2(theta1 - theta2)    group Phi
enum class CorrelationId { C1, C2, C3, C4 };
enum class Group { Psi, Phi };

Group group_of(CorrelationId c);

// The other member of the same group.
CorrelationId group_partner(CorrelationId c);

const char* name(CorrelationId c);
const char* name(Group g);

enum class DetectorPort { Plus, Minus };

// Valid detections encode '+' as bit 1 and '-' as bit 0, always.
constexpr int bit_of(DetectorPort p) { return p == DetectorPort::Plus ? 1 : 0; }

// One party's first-order interference term:
//   overall_sign * cos(2*theta + phase_sign*dphi)
// The sign pair identifies which wave-plate configuration the party runs.
struct InterferenceSpec {
  int overall_sign;  // +1 or -1
  int phase_sign;    // +1 or -1
};

// Alice's prepare-measure term is +cos(2*theta1 + dphi) for every correlation.
InterferenceSpec alice_pm_spec();

// Bob's prepare-measure term per correlation choice:
//   C1 -> (-1, +1), C2 -> (+1, -1), C3 -> (-1, -1), C4 -> (+1, +1).
InterferenceSpec bob_pm_spec(CorrelationId c);

// In the guess-verify part Bob swaps his preparation optics for a fixed
// quarter-wave plate, leaving him the term +cos(2*theta2 + dphi).
InterferenceSpec bob_gv_spec();

double interference_term(InterferenceSpec spec, Angle theta, RelativePhase dphi);

// Probability that a photon exits the '+' port given its interference term.
// Reproduces the deterministic detector assignments at term = +-1 and is the
// minimal Bernoulli extension in between. Throws std::domain_error if
// |term| > 1.
double detection_prob_plus(double term);

double analytic_correlation(CorrelationId c, Angle theta1, Angle theta2);

struct OptimalSettings {
  Angle theta1;
  Angle theta2;
  double expected_c;  // +1 or -1
};

// Half-wave plate angles giving maximum |correlation|:
//   C1 -> (+45, +45, -1), C2 -> (+45, -45, +1),
//   C3 -> (+45, -45, -1), C4 -> (+45, +45, +1).
OptimalSettings optimal_settings(CorrelationId c);

Angle optimal_theta2(CorrelationId c);

// Relative phase Alice sends for a guess-verify round: the locked -90 for
// guesses C1/C4, shifted +90 for guesses C2/C3.
RelativePhase guess_phase(CorrelationId guess);

// Monte-Carlo estimate of the correlation from products of the two parties'
// interference terms over a common random phase. The factor 2 undoes the 1/2
// introduced by phase-averaging a product of cosines. Deterministic for a
// fixed seed; throws std::domain_error if n_samples < 1.
double estimate_correlation(CorrelationId c, Angle theta1, Angle theta2,
                            std::int64_t n_samples, std::uint64_t rng_seed);

}  // namespace pmgv::optics
