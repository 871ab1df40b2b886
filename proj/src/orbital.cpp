#include "cislunar/orbital.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cislunar/units.hpp"

namespace cislunar::orbital {

namespace {

constexpr double kKeplerTolerance = 1e-12;  // [rad]
constexpr int kKeplerMaxIterations = 50;
constexpr double kLunarSoiCap = 60000.0;  // [km]

[[noreturn]] void reject(const std::string& field, double value) {
    std::ostringstream msg;
    msg << "invalid orbital element: " << field << " = " << value;
    throw std::invalid_argument(msg.str());
}

double true_to_eccentric_anomaly(double true_anomaly, double e) {
    const double half = 0.5 * true_anomaly;
    return 2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(half),
                            std::sqrt(1.0 + e) * std::cos(half));
}

double eccentric_to_true_anomaly(double eccentric_anomaly, double e) {
    const double half = 0.5 * eccentric_anomaly;
    return 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(half),
                            std::sqrt(1.0 - e) * std::cos(half));
}

}  // namespace

CentralBody earth() { return {398600.4418, 6378.1, "Earth"}; }

CentralBody moon() { return {4902.800, 1737.4, "Moon"}; }

LunarEphemerisModel default_lunar_model() {
    return {384400.0, 27.321661 * kSecondsPerDay, deg_to_rad(5.145), 0.0};
}

OrbitalElements::OrbitalElements(double semi_major_axis_km, double eccentricity,
                                 double inclination_rad, double raan_rad, double arg_perigee_rad,
                                 double true_anomaly_rad, double epoch_s)
    : semi_major_axis_(semi_major_axis_km),
      eccentricity_(eccentricity),
      inclination_(inclination_rad),
      raan_(wrap_two_pi(raan_rad)),
      arg_perigee_(wrap_two_pi(arg_perigee_rad)),
      true_anomaly_(wrap_two_pi(true_anomaly_rad)),
      epoch_(epoch_s) {
    if (!(semi_major_axis_ > 0.0) || !std::isfinite(semi_major_axis_)) {
        reject("semi_major_axis", semi_major_axis_);
    }
    if (!(eccentricity_ >= 0.0 && eccentricity_ < 1.0)) {
        reject("eccentricity", eccentricity_);
    }
    if (!(inclination_ >= 0.0 && inclination_ <= std::numbers::pi)) {
        reject("inclination", inclination_);
    }
    if (!std::isfinite(epoch_)) {
        reject("epoch", epoch_);
    }
}

double solve_kepler_equation(double mean_anomaly, double eccentricity) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
        reject("eccentricity", eccentricity);
    }
    if (!std::isfinite(mean_anomaly)) {
        reject("mean_anomaly", mean_anomaly);
    }
    const double m = wrap_two_pi(mean_anomaly);
    double e_anom = m;
    double residual = e_anom - eccentricity * std::sin(e_anom) - m;
    for (int i = 0; i < kKeplerMaxIterations; ++i) {
        if (std::abs(residual) < kKeplerTolerance) {
            return wrap_two_pi(e_anom);
        }
        e_anom -= residual / (1.0 - eccentricity * std::cos(e_anom));
        residual = e_anom - eccentricity * std::sin(e_anom) - m;
    }
    if (std::abs(residual) < kKeplerTolerance) {
        return wrap_two_pi(e_anom);
    }
    std::ostringstream msg;
    msg << "Kepler iteration did not converge: M = " << m << ", e = " << eccentricity
        << ", residual = " << residual;
    throw KeplerSolverError(msg.str(), residual);
}

StateVector elements_to_state(const OrbitalElements& el, const CentralBody& body) {
    if (!(el.semi_major_axis() > body.radius)) {
        reject("semi_major_axis (below " + body.name + " surface)", el.semi_major_axis());
    }
    const double a = el.semi_major_axis();
    const double e = el.eccentricity();
    const double nu = el.true_anomaly();
    const double p = a * (1.0 - e * e);
    const double r = p / (1.0 + e * std::cos(nu));

    // Perifocal position and velocity.
    const double x_p = r * std::cos(nu);
    const double y_p = r * std::sin(nu);
    const double v_fac = std::sqrt(body.gravitational_parameter / p);
    const double vx_p = -v_fac * std::sin(nu);
    const double vy_p = v_fac * (e + std::cos(nu));

    // Rz(raan) * Rx(i) * Rz(argp), applied to the perifocal frame.
    const double c_raan = std::cos(el.raan());
    const double s_raan = std::sin(el.raan());
    const double c_i = std::cos(el.inclination());
    const double s_i = std::sin(el.inclination());
    const double c_w = std::cos(el.arg_perigee());
    const double s_w = std::sin(el.arg_perigee());

    const double r11 = c_raan * c_w - s_raan * s_w * c_i;
    const double r12 = -c_raan * s_w - s_raan * c_w * c_i;
    const double r21 = s_raan * c_w + c_raan * s_w * c_i;
    const double r22 = -s_raan * s_w + c_raan * c_w * c_i;
    const double r31 = s_w * s_i;
    const double r32 = c_w * s_i;

    StateVector state;
    state.position = {r11 * x_p + r12 * y_p, r21 * x_p + r22 * y_p, r31 * x_p + r32 * y_p};
    state.velocity = {r11 * vx_p + r12 * vy_p, r21 * vx_p + r22 * vy_p, r31 * vx_p + r32 * vy_p};
    state.epoch = el.epoch();
    return state;
}

OrbitalElements state_to_elements(const StateVector& state, const CentralBody& body) {
    const double mu = body.gravitational_parameter;
    const Vec3 r_vec = state.position;
    const Vec3 v_vec = state.velocity;
    const double r = r_vec.norm();
    const double v2 = v_vec.norm_squared();

    const Vec3 h_vec = r_vec.cross(v_vec);
    const double h = h_vec.norm();
    const Vec3 node_vec{-h_vec.y, h_vec.x, 0.0};  // z_hat x h
    const double n = node_vec.norm();

    const double rv = r_vec.dot(v_vec);
    const Vec3 e_vec = (r_vec * (v2 - mu / r) - v_vec * rv) / mu;
    const double e = e_vec.norm();

    const double a = 1.0 / (2.0 / r - v2 / mu);
    const double inclination = std::acos(std::clamp(h_vec.z / h, -1.0, 1.0));

    double raan = 0.0;
    if (n > 0.0) {
        raan = std::atan2(node_vec.y, node_vec.x);
    }

    double arg_perigee = 0.0;
    double true_anomaly;
    if (e > 0.0) {
        if (n > 0.0) {
            arg_perigee = std::acos(std::clamp(node_vec.dot(e_vec) / (n * e), -1.0, 1.0));
            if (e_vec.z < 0.0) {
                arg_perigee = kTwoPi - arg_perigee;
            }
        } else {
            arg_perigee = std::atan2(e_vec.y, e_vec.x);  // equatorial: longitude of perigee
        }
        true_anomaly = std::acos(std::clamp(e_vec.dot(r_vec) / (e * r), -1.0, 1.0));
        if (rv < 0.0) {
            true_anomaly = kTwoPi - true_anomaly;
        }
    } else {
        // Circular: measure the anomaly from the node (or x axis when equatorial).
        const Vec3 ref = n > 0.0 ? node_vec / n : Vec3{1.0, 0.0, 0.0};
        true_anomaly = std::acos(std::clamp(ref.dot(r_vec) / r, -1.0, 1.0));
        if (r_vec.z < 0.0 || (n == 0.0 && r_vec.y < 0.0)) {
            true_anomaly = kTwoPi - true_anomaly;
        }
    }

    return OrbitalElements(a, e, inclination, raan, arg_perigee, true_anomaly, state.epoch);
}

StateVector propagate(const OrbitalElements& el, const CentralBody& body, double t) {
    if (t < el.epoch()) {
        std::ostringstream msg;
        msg << "propagation time " << t << " precedes epoch " << el.epoch();
        throw std::invalid_argument(msg.str());
    }
    const double e = el.eccentricity();
    const double n = std::sqrt(body.gravitational_parameter /
                               (el.semi_major_axis() * el.semi_major_axis() * el.semi_major_axis()));
    const double e_anom0 = true_to_eccentric_anomaly(el.true_anomaly(), e);
    const double m0 = e_anom0 - e * std::sin(e_anom0);
    const double m = m0 + n * (t - el.epoch());
    const double e_anom = solve_kepler_equation(m, e);
    const double nu = eccentric_to_true_anomaly(e_anom, e);

    const OrbitalElements advanced(el.semi_major_axis(), e, el.inclination(), el.raan(),
                                   el.arg_perigee(), nu, t);
    return elements_to_state(advanced, body);
}

Vec3 moon_position(const LunarEphemerisModel& model, double t) {
    const double theta = model.phase_at_epoch + kTwoPi * t / model.sidereal_period;
    const double c_i = std::cos(model.inclination);
    const double s_i = std::sin(model.inclination);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {model.orbit_radius * c, model.orbit_radius * s * c_i, model.orbit_radius * s * s_i};
}

Vec3 moon_velocity(const LunarEphemerisModel& model, double t) {
    const double theta = model.phase_at_epoch + kTwoPi * t / model.sidereal_period;
    const double rate = kTwoPi * model.orbit_radius / model.sidereal_period;
    const double c_i = std::cos(model.inclination);
    const double s_i = std::sin(model.inclination);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {-rate * s, rate * c * c_i, rate * c * s_i};
}

StateVector llo_state_eci(const OrbitalElements& elements, const LunarEphemerisModel& moon_model,
                          const CentralBody& moon_body, double t) {
    if (!(elements.semi_major_axis() < kLunarSoiCap)) {
        reject("semi_major_axis (outside lunar sphere of influence)", elements.semi_major_axis());
    }
    const StateVector moon_centered = propagate(elements, moon_body, t);
    StateVector state;
    state.position = moon_position(moon_model, t) + moon_centered.position;
    state.velocity = moon_velocity(moon_model, t) + moon_centered.velocity;
    state.epoch = t;
    return state;
}

double orbital_period(const OrbitalElements& elements, const CentralBody& body) {
    const double a = elements.semi_major_axis();
    return kTwoPi * std::sqrt(a * a * a / body.gravitational_parameter);
}

}  // namespace cislunar::orbital
