#include "pmgv/physics.hpp"

#include <limits>
#include <stdexcept>

namespace pmgv::physics {

PulseOutcome sample_pulse(const SourceModel& source, Rng& rng) {
  PulseOutcome out;
  if (const auto* laser = std::get_if<AttenuatedLaser>(&source)) {
    out.n_ancilla = rng.poisson(laser->mean_ancilla);
    out.n_signal_state = rng.poisson(laser->mean_signal);
  } else if (const auto* pair = std::get_if<CorrelatedPair>(&source)) {
    const bool emitted = rng.bernoulli(pair->pair_prob);
    out.n_ancilla = emitted ? 1 : 0;
    out.n_signal_state = emitted ? 1 : 0;
    out.n_signal_noise = rng.poisson(pair->noise_per_pulse);
  } else {
    out.n_ancilla = 1;
    out.n_signal_state = 1;
  }
  return out;
}

int transmit(int n_photons, const ChannelModel& channel, Rng& rng) {
  if (n_photons < 0) throw std::domain_error("negative photon number");
  return rng.binomial(n_photons, channel.transmittance());
}

namespace {

ClickOutcome classify(bool plus, bool minus) {
  if (plus && minus) return ClickOutcome::DoubleClick;
  if (plus) return ClickOutcome::ClickPlus;
  if (minus) return ClickOutcome::ClickMinus;
  return ClickOutcome::NoClick;
}

}  // namespace

ClickOutcome detect(int n_photons, double plus_prob, const DetectorModel& det,
                    Rng& rng) {
  return detect_mixed(n_photons, plus_prob, 0, det, rng);
}

ClickOutcome detect_mixed(int n_state, double state_plus_prob, int n_noise,
                          const DetectorModel& det, Rng& rng) {
  bool plus = false;
  bool minus = false;
  for (int i = 0; i < n_state; ++i) {
    if (!rng.bernoulli(det.efficiency)) continue;
    (rng.bernoulli(state_plus_prob) ? plus : minus) = true;
  }
  for (int i = 0; i < n_noise; ++i) {
    if (!rng.bernoulli(det.efficiency)) continue;
    (rng.bernoulli(0.5) ? plus : minus) = true;
  }
  if (rng.bernoulli(det.dark_count_prob)) plus = true;
  if (rng.bernoulli(det.dark_count_prob)) minus = true;
  return classify(plus, minus);
}

double success_probability(const SourceModel& source) {
  if (const auto* laser = std::get_if<AttenuatedLaser>(&source)) {
    return laser->mean_ancilla * laser->mean_signal;
  }
  if (const auto* pair = std::get_if<CorrelatedPair>(&source)) {
    return pair->pair_prob;
  }
  return 1.0;
}

double compute_car(double true_coinc_rate, double accidental_rate) {
  if (true_coinc_rate < 0 || accidental_rate < 0) {
    throw std::domain_error("coincidence rates must be non-negative");
  }
  if (accidental_rate == 0.0) return std::numeric_limits<double>::infinity();
  return true_coinc_rate / accidental_rate;
}

}  // namespace pmgv::physics
