#include <cmath>
#include <numbers>

#include "bioforge/geom/generators.hpp"

namespace bioforge::geom {

namespace {

// Prism along direction u with an n-gon cross-section in the (v, z) plane.
Mesh fiber_cylinder(const Vec3& center, const Vec3& u, const Vec3& v, double half_len,
                    double radius, unsigned segments) {
    Mesh m;
    const Vec3 w{0, 0, 1};
    m.vertices.reserve(2 * segments);
    for (int end = 0; end < 2; ++end) {
        Vec3 c = center + u * (end == 0 ? -half_len : half_len);
        for (unsigned k = 0; k < segments; ++k) {
            double a = 2.0 * std::numbers::pi * k / segments;
            m.vertices.push_back(c + v * (radius * std::cos(a)) + w * (radius * std::sin(a)));
        }
    }
    // end caps: ring at -u end wound to face -u, +u end to face +u
    std::vector<uint32_t> cap0(segments), cap1(segments);
    for (unsigned k = 0; k < segments; ++k) {
        cap0[k] = segments - 1 - k; // reversed
        cap1[k] = segments + k;
    }
    // ring orientation: with (v,z) right-handed about u, CCW ring faces +u.
    m.faces.push_back(cap0);
    m.faces.push_back(cap1);
    for (unsigned k = 0; k < segments; ++k) {
        uint32_t a = k;
        uint32_t b = (k + 1) % segments;
        m.faces.push_back({a, b, b + segments, a + segments});
    }
    return m;
}

} // namespace

std::vector<double> helical_ply_angles(const HelicalParams& p, Rng& rng) {
    std::vector<double> angles;
    angles.reserve(p.plies);
    for (unsigned i = 0; i < p.plies; ++i) {
        double eps = p.noise_deg * (2.0 * rng.next_double() - 1.0);
        angles.push_back(static_cast<double>(i) * p.rotation_deg + eps);
    }
    return angles;
}

std::vector<Mesh> build_helical(const HelicalParams& p, Rng& rng) {
    std::vector<double> angles = helical_ply_angles(p, rng);
    const double t = p.ply_thickness;
    const double fiber_pitch = p.footprint / static_cast<double>(p.fibers_per_ply);
    // fibers are sized to stay disjoint within a ply and within the ply slab
    const double radius = std::min({p.fiber_radius, 0.5 * t, 0.45 * fiber_pitch});
    const double half_w = std::min(0.5 * p.fiber_width, 0.45 * fiber_pitch);
    const double half_len = 0.5 * p.footprint;

    std::vector<Mesh> plies;
    plies.reserve(p.plies);
    for (unsigned i = 0; i < p.plies; ++i) {
        double theta = angles[i] * std::numbers::pi / 180.0;
        Vec3 u{std::cos(theta), std::sin(theta), 0.0};
        Vec3 v{-std::sin(theta), std::cos(theta), 0.0};
        double zc = (static_cast<double>(i) + 0.5) * t;
        Mesh ply;
        ply.label = "helical";
        for (unsigned f = 0; f < p.fibers_per_ply; ++f) {
            double offset =
                (static_cast<double>(f) - (static_cast<double>(p.fibers_per_ply) - 1.0) / 2.0) *
                fiber_pitch;
            Vec3 center = v * offset + Vec3{0, 0, zc};
            if (p.rectangular_fibers) {
                Mesh box;
                const Vec3 du = u * half_len, dv = v * half_w, dz{0, 0, 0.5 * t};
                box.vertices = {
                    center - du - dv - dz, center + du - dv - dz,
                    center + du + dv - dz, center - du + dv - dz,
                    center - du - dv + dz, center + du - dv + dz,
                    center + du + dv + dz, center - du + dv + dz,
                };
                box.faces = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                             {2, 3, 7, 6}, {1, 2, 6, 5}, {3, 0, 4, 7}};
                ply.append(box);
            } else {
                ply.append(fiber_cylinder(center, u, v, half_len, radius, p.fiber_segments));
            }
        }
        plies.push_back(std::move(ply));
    }
    return plies;
}

} // namespace bioforge::geom
