#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rankcover/errors.hpp"
#include "rankcover/iop.hpp"

namespace rankcover {

// Semi-holonomic robot: straight segments start and end at rest with a
// trapezoidal (or triangular) speed profile; turns happen in place.
struct MotionModel {
  double v_max = 100.0;  // cm/s
  double accel = 50.0;   // cm/s^2
  double omega = 30.0;   // deg/s

  void validate() const {
    if (!(v_max > 0.0) || !(accel > 0.0) || !(omega > 0.0))
      throw ContractError("MotionModel: v_max, accel and omega must be strictly positive");
  }
};

inline double segment_time(double distance, const MotionModel& m) {
  if (distance < 0.0) throw ContractError("segment_time: negative distance");
  if (distance >= m.v_max * m.v_max / m.accel) return distance / m.v_max + m.v_max / m.accel;
  return 2.0 * std::sqrt(distance / m.accel);
}

inline double turn_time(double delta_deg, const MotionModel& m) {
  if (delta_deg < 0.0 || delta_deg > 180.0) throw ContractError("turn_time: angle must be in [0, 180] degrees");
  return delta_deg / m.omega;
}

// Unit heading vector; zero vectors are not headings.
struct Heading {
  double dx = 1.0;
  double dy = 0.0;

  static Heading between(Point from, Point to) {
    const double len = std::hypot(to.x - from.x, to.y - from.y);
    return {(to.x - from.x) / len, (to.y - from.y) / len};
  }
  Heading reversed() const { return {-dx, -dy}; }
  bool operator==(const Heading&) const = default;
};

// In-place rotation between two headings, in [0, 180] degrees.
inline double heading_change_deg(Heading a, Heading b) {
  const double dot = std::clamp(a.dx * b.dx + a.dy * b.dy, -1.0, 1.0);
  const double cross = a.dx * b.dy - a.dy * b.dx;
  return std::abs(std::atan2(cross, dot)) * 180.0 / std::numbers::pi;
}

inline constexpr double kTurnEpsDeg = 1e-9;

}  // namespace rankcover
