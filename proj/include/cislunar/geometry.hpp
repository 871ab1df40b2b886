#pragma once

// Euclidean link geometry: distances, spherical-body occlusion, and the
// reflection angle between the uplink and downlink legs of a relayed path.

#include "cislunar/vec3.hpp"

namespace cislunar::geometry {

/// One relay hop: transmit point, reflecting platform, destination, the
/// two leg lengths, and the angle between the legs.
struct LinkGeometry {
    Vec3 earth_station;  // [km]
    Vec3 ris_platform;   // [km]
    Vec3 destination;    // [km]
    double d_er;         // |ris_platform - earth_station| [km]
    double d_rm;         // |destination - ris_platform| [km]
    double phi_opt;      // angle between the legs [rad], in [0, pi]
};

double euclidean_distance(const Vec3& p, const Vec3& q);

/// Angle between (ris - earth) and (destination - ris). The cosine is
/// clamped to [-1, 1], so collinear geometries return exactly 0 or pi.
/// Throws std::domain_error when either leg is shorter than 1e-9 km.
double optimal_reflection_angle(const Vec3& earth, const Vec3& ris, const Vec3& destination);

/// True when the closed segment pq stays outside the open ball of the
/// occluder; endpoints exactly on the sphere count as visible.
bool line_of_sight(const Vec3& p, const Vec3& q, const Vec3& occluder_center,
                   double occluder_radius);

LinkGeometry make_link_geometry(const Vec3& earth, const Vec3& ris, const Vec3& destination);

}  // namespace cislunar::geometry
