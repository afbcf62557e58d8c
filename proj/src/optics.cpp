#include "pmgv/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace pmgv::optics {

Group group_of(CorrelationId c) {
  switch (c) {
    case CorrelationId::C1:
    case CorrelationId::C2:
      return Group::Psi;
    case CorrelationId::C3:
    case CorrelationId::C4:
      return Group::Phi;
  }
  throw std::logic_error("bad CorrelationId");
}

CorrelationId group_partner(CorrelationId c) {
  switch (c) {
    case CorrelationId::C1:
      return CorrelationId::C2;
    case CorrelationId::C2:
      return CorrelationId::C1;
    case CorrelationId::C3:
      return CorrelationId::C4;
    case CorrelationId::C4:
      return CorrelationId::C3;
  }
  throw std::logic_error("bad CorrelationId");
}

const char* name(CorrelationId c) {
  switch (c) {
    case CorrelationId::C1:
      return "C1";
    case CorrelationId::C2:
      return "C2";
    case CorrelationId::C3:
      return "C3";
    case CorrelationId::C4:
      return "C4";
  }
  return "?";
}

const char* name(Group g) { return g == Group::Psi ? "Psi" : "Phi"; }

InterferenceSpec alice_pm_spec() { return {+1, +1}; }

InterferenceSpec bob_pm_spec(CorrelationId c) {
  switch (c) {
    case CorrelationId::C1:
      return {-1, +1};
    case CorrelationId::C2:
      return {+1, -1};
    case CorrelationId::C3:
      return {-1, -1};
    case CorrelationId::C4:
      return {+1, +1};
  }
  throw std::logic_error("bad CorrelationId");
}

InterferenceSpec bob_gv_spec() { return {+1, +1}; }

double interference_term(InterferenceSpec spec, Angle theta, RelativePhase dphi) {
  const double arg = 2.0 * theta.degrees() + spec.phase_sign * dphi.degrees();
  return spec.overall_sign * std::cos(deg_to_rad(arg));
}

double detection_prob_plus(double term) {
  if (std::abs(term) > 1.0) {
    throw std::domain_error("interference term outside [-1, 1]");
  }
  return (1.0 + term) / 2.0;
}

double analytic_correlation(CorrelationId c, Angle theta1, Angle theta2) {
  const double diff = deg_to_rad(2.0 * (theta1.degrees() - theta2.degrees()));
  const double sum = deg_to_rad(2.0 * (theta1.degrees() + theta2.degrees()));
  switch (c) {
    case CorrelationId::C1:
      return -std::cos(diff);
    case CorrelationId::C2:
      return +std::cos(sum);
    case CorrelationId::C3:
      return -std::cos(sum);
    case CorrelationId::C4:
      return +std::cos(diff);
  }
  throw std::logic_error("bad CorrelationId");
}

OptimalSettings optimal_settings(CorrelationId c) {
  switch (c) {
    case CorrelationId::C1:
      return {Angle(+45), Angle(+45), -1.0};
    case CorrelationId::C2:
      return {Angle(+45), Angle(-45), +1.0};
    case CorrelationId::C3:
      return {Angle(+45), Angle(-45), -1.0};
    case CorrelationId::C4:
      return {Angle(+45), Angle(+45), +1.0};
  }
  throw std::logic_error("bad CorrelationId");
}

Angle optimal_theta2(CorrelationId c) { return optimal_settings(c).theta2; }

RelativePhase guess_phase(CorrelationId guess) {
  switch (guess) {
    case CorrelationId::C1:
    case CorrelationId::C4:
      return RelativePhase::locked();
    case CorrelationId::C2:
    case CorrelationId::C3:
      return RelativePhase::shifted();
  }
  throw std::logic_error("bad CorrelationId");
}

double estimate_correlation(CorrelationId c, Angle theta1, Angle theta2,
                            std::int64_t n_samples, std::uint64_t rng_seed) {
  if (n_samples < 1) {
    throw std::domain_error("estimate_correlation requires n_samples >= 1");
  }
  Rng rng(rng_seed);
  const InterferenceSpec alice = alice_pm_spec();
  const InterferenceSpec bob = bob_pm_spec(c);
  double sum = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const RelativePhase phi = RelativePhase::of_degrees(rng.uniform(0.0, 360.0));
    const double a = interference_term(alice, theta1, phi);
    const double b = interference_term(bob, theta2, phi);
    sum += a * b;
  }
  return 2.0 * sum / static_cast<double>(n_samples);
}

}  // namespace pmgv::optics
