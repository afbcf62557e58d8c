#pragma once

#include <variant>

#include "pmgv/rng.hpp"

namespace pmgv::physics {

// Photon sources. Means are photons per pulse.
struct AttenuatedLaser {
  double mean_ancilla = 0.1;  // n_a
  double mean_signal = 0.1;   // n_s
};

// Bernoulli pair emission plus Poisson uncorrelated noise on the signal arm.
struct CorrelatedPair {
  double pair_prob = 0.01;        // n_pr
  double noise_per_pulse = 0.01;  // calibrated so CAR = 100 at defaults
};

// Two time-synchronized deterministic single-photon sources.
struct DeterministicPair {};

using SourceModel = std::variant<AttenuatedLaser, CorrelatedPair, DeterministicPair>;

struct ChannelModel {
  double length_km = 0.0;
  double loss_db_per_km = 0.2;  // standard telecom fiber
  double extra_loss_db = 0.0;

  double total_loss_db() const { return length_km * loss_db_per_km + extra_loss_db; }
  double transmittance() const { return std::pow(10.0, -total_loss_db() / 10.0); }
};

struct DetectorModel {
  double efficiency = 1.0;       // (0, 1]
  double dark_count_prob = 0.0;  // per gate, per port
};

// Photons emitted into the two arms for one pulse slot. Signal photons are
// split by origin: phase-carrying state photons versus uncorrelated noise.
// The split drives coincidence/accidental accounting and the photon-number-
// splitting attack surface (noise photons carry no key information).
struct PulseOutcome {
  int n_ancilla = 0;
  int n_signal_state = 0;
  int n_signal_noise = 0;

  int n_signal() const { return n_signal_state + n_signal_noise; }
};

PulseOutcome sample_pulse(const SourceModel& source, Rng& rng);

// Binomial thinning of a photon number through a lossy channel.
int transmit(int n_photons, const ChannelModel& channel, Rng& rng);

enum class ClickOutcome { NoClick, ClickPlus, ClickMinus, DoubleClick };

// Routes n photons to the +/- ports with P(+) = plus_prob each, applies
// detector efficiency per photon, then adds independent dark counts per port.
ClickOutcome detect(int n_photons, double plus_prob, const DetectorModel& det,
                    Rng& rng);

// Same chain for a pulse whose state photons share one routing probability
// while noise photons route 50/50.
ClickOutcome detect_mixed(int n_state, double state_plus_prob, int n_noise,
                          const DetectorModel& det, Rng& rng);

// Ideal-device coincidence probability per pulse: n_a*n_s for the attenuated
// laser, n_pr for the pair source, 1 for deterministic sources.
double success_probability(const SourceModel& source);

// Coincidence-to-accidental ratio. accidental_rate = 0 reports the infinite
// sentinel; negative rates are a domain error.
double compute_car(double true_coinc_rate, double accidental_rate);

}  // namespace pmgv::physics
