#pragma once

#include <numbers>

namespace cislunar {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle_rad);

double deg_to_rad(double deg);
double rad_to_deg(double rad);

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kMetersPerKm = 1000.0;

}  // namespace cislunar
