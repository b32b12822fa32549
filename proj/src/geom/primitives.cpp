#include <cmath>
#include <numbers>

#include "bioforge/geom/extrude.hpp"
#include "bioforge/geom/generators.hpp"

namespace bioforge::geom {

namespace {

void rotate_z_about(Mesh& m, const Vec3& center, double deg) {
    if (deg == 0.0) return;
    double rad = deg * std::numbers::pi / 180.0;
    double c = std::cos(rad), s = std::sin(rad);
    for (auto& v : m.vertices) {
        double dx = v.x - center.x, dy = v.y - center.y;
        v.x = center.x + c * dx - s * dy;
        v.y = center.y + s * dx + c * dy;
    }
}

Mesh uv_sphere(double radius, unsigned segments) {
    Mesh m;
    const unsigned rings = std::max(3u, segments / 2);
    m.vertices.push_back({0, 0, radius}); // north pole
    for (unsigned r = 1; r < rings; ++r) {
        double phi = std::numbers::pi * r / rings;
        double z = radius * std::cos(phi);
        double rr = radius * std::sin(phi);
        for (unsigned s = 0; s < segments; ++s) {
            double a = 2.0 * std::numbers::pi * s / segments;
            m.vertices.push_back({rr * std::cos(a), rr * std::sin(a), z});
        }
    }
    m.vertices.push_back({0, 0, -radius}); // south pole
    auto ring_at = [&](unsigned r, unsigned s) { return 1 + (r - 1) * segments + (s % segments); };
    for (unsigned s = 0; s < segments; ++s) {
        m.faces.push_back({0, ring_at(1, s), ring_at(1, s + 1)});
    }
    for (unsigned r = 1; r + 1 < rings; ++r) {
        for (unsigned s = 0; s < segments; ++s) {
            m.faces.push_back({ring_at(r, s), ring_at(r + 1, s), ring_at(r + 1, s + 1),
                               ring_at(r, s + 1)});
        }
    }
    uint32_t south = static_cast<uint32_t>(m.vertices.size() - 1);
    for (unsigned s = 0; s < segments; ++s) {
        m.faces.push_back({south, ring_at(rings - 1, s + 1), ring_at(rings - 1, s)});
    }
    return m;
}

Mesh ngon_prism(double radius, double height, unsigned segments) {
    Mesh m;
    for (int end = 0; end < 2; ++end) {
        double z = end == 0 ? 0.0 : height;
        for (unsigned s = 0; s < segments; ++s) {
            double a = 2.0 * std::numbers::pi * s / segments;
            m.vertices.push_back({radius * std::cos(a), radius * std::sin(a), z});
        }
    }
    std::vector<uint32_t> bottom(segments), top(segments);
    for (unsigned s = 0; s < segments; ++s) {
        bottom[s] = segments - 1 - s;
        top[s] = segments + s;
    }
    m.faces.push_back(bottom);
    m.faces.push_back(top);
    for (unsigned s = 0; s < segments; ++s) {
        uint32_t a = s, b = (s + 1) % segments;
        m.faces.push_back({a, b, b + segments, a + segments});
    }
    return m;
}

Mesh cone(double radius, double height, unsigned segments) {
    Mesh m;
    for (unsigned s = 0; s < segments; ++s) {
        double a = 2.0 * std::numbers::pi * s / segments;
        m.vertices.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
    }
    m.vertices.push_back({0, 0, height});
    std::vector<uint32_t> base(segments);
    for (unsigned s = 0; s < segments; ++s) base[s] = segments - 1 - s;
    m.faces.push_back(base);
    uint32_t apex = segments;
    for (unsigned s = 0; s < segments; ++s) {
        m.faces.push_back({s, (s + 1) % segments, apex});
    }
    return m;
}

Mesh base_shape(const PrimitiveParams& p) {
    switch (p.shape) {
        case PrimitiveParams::Shape::sphere:
            return uv_sphere(p.radius, p.segments);
        case PrimitiveParams::Shape::cylinder: {
            if (p.hole_radius > 0.0) {
                double hole = std::min(p.hole_radius, 0.8 * p.radius);
                auto outer = ellipse_polygon({0, 0}, p.radius, p.radius,
                                             static_cast<int>(p.segments));
                auto inner = ellipse_polygon({0, 0}, hole, hole, static_cast<int>(p.segments));
                return extrude_profile(outer, {inner}, p.height);
            }
            return ngon_prism(p.radius, p.height, p.segments);
        }
        case PrimitiveParams::Shape::cone:
            return cone(p.radius, p.height, p.segments);
        case PrimitiveParams::Shape::cube:
        default: {
            double s = p.size;
            if (p.hole_radius > 0.0) {
                double hole = std::min(p.hole_radius, 0.4 * s);
                std::vector<Vec2> outer = {{-s / 2, -s / 2}, {s / 2, -s / 2},
                                           {s / 2, s / 2}, {-s / 2, s / 2}};
                auto inner = ellipse_polygon({0, 0}, hole, hole, static_cast<int>(p.segments));
                return extrude_profile(outer, {inner}, s);
            }
            return make_box({{-s / 2, -s / 2, 0}, {s / 2, s / 2, s}});
        }
    }
}

} // namespace

Mesh build_slab(const SlabParams& p) {
    Mesh m = make_box({{0, 0, 0}, {p.size_x, p.size_y, p.size_z}});
    rotate_z_about(m, {p.size_x / 2, p.size_y / 2, 0}, p.rotate_z_deg);
    m.translate({p.translate_x, p.translate_y, p.translate_z});
    m.label = "slab";
    return m;
}

std::vector<Mesh> build_primitive(const PrimitiveParams& p) {
    // instance positions: grid, ring or linear array
    std::vector<Vec3> positions;
    if (p.grid_x > 1 || p.grid_y > 1) {
        for (unsigned iy = 0; iy < p.grid_y; ++iy) {
            for (unsigned ix = 0; ix < p.grid_x; ++ix) {
                positions.push_back({ix * p.spacing, iy * p.spacing, 0.0});
            }
        }
    } else if (p.count > 1 && p.ring_radius > 0.0) {
        for (unsigned i = 0; i < p.count; ++i) {
            double a = 2.0 * std::numbers::pi * i / p.count;
            positions.push_back({p.ring_radius * std::cos(a), p.ring_radius * std::sin(a), 0.0});
        }
    } else {
        for (unsigned i = 0; i < p.count; ++i) {
            positions.push_back({i * p.spacing, 0.0, 0.0});
        }
    }

    std::vector<Mesh> out;
    out.reserve(positions.size());
    Mesh base = base_shape(p);
    for (size_t i = 0; i < positions.size(); ++i) {
        Mesh inst = base;
        Box3 b = inst.bounds();
        Vec3 c = b.center();
        for (auto& v : inst.vertices) {
            v.x = c.x + (v.x - c.x) * p.scale_x;
            v.y = c.y + (v.y - c.y) * p.scale_y;
            v.z = c.z + (v.z - c.z) * p.scale_z;
        }
        // one instance: absolute rotation; arrays: incremental per instance
        double angle = positions.size() == 1 ? p.rotate_z_deg
                                             : p.rotate_z_deg * static_cast<double>(i);
        rotate_z_about(inst, c, angle);
        inst.translate(positions[i] + Vec3{p.translate_x, p.translate_y, p.translate_z});
        inst.label = "primitive";
        out.push_back(std::move(inst));
    }
    return out;
}

} // namespace bioforge::geom
