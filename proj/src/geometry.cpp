#include "cislunar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cislunar::geometry {

namespace {
constexpr double kDegenerateLegKm = 1e-9;
}

double euclidean_distance(const Vec3& p, const Vec3& q) { return (p - q).norm(); }

double optimal_reflection_angle(const Vec3& earth, const Vec3& ris, const Vec3& destination) {
    const Vec3 v_er = ris - earth;
    const Vec3 v_rm = destination - ris;
    const double n_er = v_er.norm();
    const double n_rm = v_rm.norm();
    if (n_er < kDegenerateLegKm || n_rm < kDegenerateLegKm) {
        throw std::domain_error("degenerate link geometry: zero-length leg");
    }
    const double cos_phi = std::clamp(v_er.dot(v_rm) / (n_er * n_rm), -1.0, 1.0);
    return std::acos(cos_phi);
}

bool line_of_sight(const Vec3& p, const Vec3& q, const Vec3& occluder_center,
                   double occluder_radius) {
    const Vec3 seg = q - p;
    const double seg_len_sq = seg.norm_squared();
    if (seg_len_sq == 0.0) {
        throw std::invalid_argument("line_of_sight requires distinct endpoints");
    }
    const double t = std::clamp((occluder_center - p).dot(seg) / seg_len_sq, 0.0, 1.0);
    const Vec3 closest = p + seg * t;
    return euclidean_distance(closest, occluder_center) >= occluder_radius;
}

LinkGeometry make_link_geometry(const Vec3& earth, const Vec3& ris, const Vec3& destination) {
    LinkGeometry g;
    g.earth_station = earth;
    g.ris_platform = ris;
    g.destination = destination;
    g.d_er = euclidean_distance(earth, ris);
    g.d_rm = euclidean_distance(ris, destination);
    g.phi_opt = optimal_reflection_angle(earth, ris, destination);
    return g;
}

}  // namespace cislunar::geometry
