#include "cislunar/units.hpp"

#include <cmath>

namespace cislunar {

double wrap_two_pi(double angle_rad) {
    double w = std::fmod(angle_rad, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    if (w >= kTwoPi) {  // fmod result within rounding of 2*pi
        w = 0.0;
    }
    return w;
}

double deg_to_rad(double deg) { return deg * (std::numbers::pi / 180.0); }

double rad_to_deg(double rad) { return rad * (180.0 / std::numbers::pi); }

}  // namespace cislunar
