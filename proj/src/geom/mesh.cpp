#include "bioforge/geom/mesh.hpp"

#include "bioforge/geom/errors.hpp"

namespace bioforge::geom {

const char* to_string(GeomErrorCode c) {
    switch (c) {
        case GeomErrorCode::ValueOutOfRange: return "ValueOutOfRange";
        case GeomErrorCode::TubuleOverlap: return "TubuleOverlap";
        case GeomErrorCode::TubuleOutsideCortex: return "TubuleOutsideCortex";
        case GeomErrorCode::DuplicateSeeds: return "DuplicateSeeds";
        case GeomErrorCode::DegenerateCell: return "DegenerateCell";
        case GeomErrorCode::NotManifold: return "NotManifold";
        case GeomErrorCode::HoleOverlap: return "HoleOverlap";
        case GeomErrorCode::HoleOutsideOuter: return "HoleOutsideOuter";
        case GeomErrorCode::SelfIntersectingProfile: return "SelfIntersectingProfile";
        case GeomErrorCode::EmptyScene: return "EmptyScene";
    }
    return "Unknown";
}

std::vector<std::array<uint32_t, 3>> Mesh::triangles() const {
    std::vector<std::array<uint32_t, 3>> tris;
    tris.reserve(faces.size());
    for (const auto& f : faces) {
        for (size_t i = 2; i < f.size(); ++i) {
            tris.push_back({f[0], f[i - 1], f[i]});
        }
    }
    return tris;
}

size_t Mesh::triangle_count() const {
    size_t n = 0;
    for (const auto& f : faces) {
        if (f.size() >= 3) n += f.size() - 2;
    }
    return n;
}

Box3 Mesh::bounds() const {
    Box3 b;
    for (const auto& v : vertices) b.expand(v);
    return b;
}

void Mesh::append(const Mesh& other) {
    uint32_t base = static_cast<uint32_t>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    faces.reserve(faces.size() + other.faces.size());
    for (const auto& f : other.faces) {
        std::vector<uint32_t> g;
        g.reserve(f.size());
        for (uint32_t i : f) g.push_back(i + base);
        faces.push_back(std::move(g));
    }
}

void Mesh::translate(const Vec3& d) {
    for (auto& v : vertices) v += d;
}

Mesh make_box(const Box3& b) {
    Mesh m;
    const Vec3 lo = b.lo, hi = b.hi;
    m.vertices = {
        {lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {hi.x, hi.y, lo.z}, {lo.x, hi.y, lo.z},
        {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {hi.x, hi.y, hi.z}, {lo.x, hi.y, hi.z},
    };
    m.faces = {
        {0, 3, 2, 1}, // bottom (-z)
        {4, 5, 6, 7}, // top (+z)
        {0, 1, 5, 4}, // -y
        {2, 3, 7, 6}, // +y
        {1, 2, 6, 5}, // +x
        {3, 0, 4, 7}, // -x
    };
    return m;
}

} // namespace bioforge::geom
