#pragma once

// Two-body Keplerian propagation for Earth and Moon orbiters, plus a
// circular analytic lunar ephemeris. All positions are expressed in an
// Earth-centered inertial frame (Moon-centered for lunar orbiters before
// composition), distances in km, times in seconds from scenario start.

#include <stdexcept>
#include <string>

#include "cislunar/vec3.hpp"

namespace cislunar::orbital {

/// Gravitating central body.
struct CentralBody {
    double gravitational_parameter;  // mu [km^3/s^2]
    double radius;                   // [km]
    std::string name;
};

CentralBody earth();
CentralBody moon();

/// Classical Keplerian element set. Angles are radians; construction
/// normalizes raan / arg_perigee / true_anomaly into [0, 2*pi) and
/// rejects invalid values.
class OrbitalElements {
  public:
    OrbitalElements(double semi_major_axis_km, double eccentricity, double inclination_rad,
                    double raan_rad, double arg_perigee_rad, double true_anomaly_rad,
                    double epoch_s = 0.0);

    double semi_major_axis() const { return semi_major_axis_; }  // [km]
    double eccentricity() const { return eccentricity_; }
    double inclination() const { return inclination_; }          // [rad], in [0, pi]
    double raan() const { return raan_; }                        // [rad]
    double arg_perigee() const { return arg_perigee_; }          // [rad]
    double true_anomaly() const { return true_anomaly_; }        // [rad]
    double epoch() const { return epoch_; }                      // [s]

  private:
    double semi_major_axis_;
    double eccentricity_;
    double inclination_;
    double raan_;
    double arg_perigee_;
    double true_anomaly_;
    double epoch_;
};

/// Epoch-stamped inertial position and velocity.
struct StateVector {
    Vec3 position;  // [km]
    Vec3 velocity;  // [km/s]
    double epoch;   // [s]
};

/// Circular lunar orbit model: radius, sidereal revolution period,
/// orbital-plane inclination to the reference equatorial plane, and the
/// in-plane phase angle at t = 0.
struct LunarEphemerisModel {
    double orbit_radius;     // [km]
    double sidereal_period;  // [s]
    double inclination;      // [rad]
    double phase_at_epoch;   // [rad]
};

/// Standard circular model: 384,400 km radius, 27.321661-day sidereal
/// period, 5.145 deg plane inclination, phase 0 at epoch.
LunarEphemerisModel default_lunar_model();

/// Thrown when the eccentric-anomaly iteration fails to converge.
class KeplerSolverError : public std::runtime_error {
  public:
    KeplerSolverError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

/// Solves E - e*sin(E) = M for the eccentric anomaly by Newton-Raphson
/// (initial guess E0 = M, tolerance 1e-12 rad, 50-iteration cap).
/// Returns E in [0, 2*pi).
double solve_kepler_equation(double mean_anomaly, double eccentricity);

/// Converts an element set to an inertial state at the elements' epoch.
StateVector elements_to_state(const OrbitalElements& elements, const CentralBody& body);

/// Recovers classical elements from an inertial state. Intended for
/// non-degenerate orbits (e > 1e-6 and i > 1e-6 recover all angles).
OrbitalElements state_to_elements(const StateVector& state, const CentralBody& body);

/// Exact closed-form two-body propagation: advances the mean anomaly by
/// n = sqrt(mu/a^3), re-solves Kepler's equation, and converts to state.
StateVector propagate(const OrbitalElements& elements, const CentralBody& body, double t);

/// Moon position at time t in the Earth-centered inertial frame [km].
Vec3 moon_position(const LunarEphemerisModel& model, double t);

/// Moon velocity at time t [km/s] (analytic derivative of the circle).
Vec3 moon_velocity(const LunarEphemerisModel& model, double t);

/// State of a Moon-centered orbiter expressed in the Earth-centered
/// frame: Moon-centered two-body propagation composed with the lunar
/// ephemeris. Rejects element sets outside the lunar sphere of influence
/// (semi-major axis >= 60,000 km).
StateVector llo_state_eci(const OrbitalElements& elements, const LunarEphemerisModel& moon_model,
                          const CentralBody& moon_body, double t);

/// Orbital period 2*pi*sqrt(a^3/mu) [s].
double orbital_period(const OrbitalElements& elements, const CentralBody& body);

}  // namespace cislunar::orbital
