#pragma once

#include <cmath>

namespace pmgv {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double degrees) { return degrees * kPi / 180.0; }

// Plane angle in degrees, normalized to [-180, 180). Arithmetic re-normalizes.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double degrees) : deg_(normalize(degrees)) {}

  double degrees() const { return deg_; }
  double radians() const { return deg_to_rad(deg_); }

  friend Angle operator+(Angle a, Angle b) { return Angle(a.deg_ + b.deg_); }
  friend Angle operator-(Angle a, Angle b) { return Angle(a.deg_ - b.deg_); }
  friend Angle operator-(Angle a) { return Angle(-a.deg_); }
  friend bool operator==(Angle a, Angle b) { return a.deg_ == b.deg_; }

  static double normalize(double degrees) {
    double d = std::fmod(degrees + 180.0, 360.0);
    if (d < 0) d += 360.0;
    return d - 180.0;
  }

 private:
  double deg_ = 0.0;
};

// Relative phase (phi_beta - phi_alpha) between the horizontal and vertical
// components, in degrees. Protocol rounds use the locked value -90 or the
// shifted value +90; estimator sampling may carry any angle.
class RelativePhase {
 public:
  static constexpr double kLockedDeg = -90.0;
  static constexpr double kShiftedDeg = +90.0;

  static RelativePhase locked() { return RelativePhase(kLockedDeg); }
  static RelativePhase shifted() { return RelativePhase(kShiftedDeg); }
  static RelativePhase of_degrees(double degrees) { return RelativePhase(degrees); }

  double degrees() const { return deg_; }
  bool is_protocol_value() const { return deg_ == kLockedDeg || deg_ == kShiftedDeg; }

  friend bool operator==(RelativePhase a, RelativePhase b) { return a.deg_ == b.deg_; }

 private:
  explicit RelativePhase(double degrees) : deg_(degrees) {}
  double deg_ = kLockedDeg;
};

}  // namespace pmgv
