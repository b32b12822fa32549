#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "bioforge/geom/mesh.hpp"
#include "bioforge/geom/rng.hpp"

namespace testsup {

using bioforge::geom::Mesh;
using bioforge::geom::Rng;
using bioforge::geom::Vec3;

// Edge-multiset oracle: closed orientable iff every undirected edge is used
// exactly twice with opposite directions. Independent of the library check.
inline bool edge_multiset_closed(const Mesh& m) {
    std::map<std::pair<uint32_t, uint32_t>, int> fwd, rev;
    for (const auto& f : m.faces) {
        if (f.size() < 3) return false;
        for (size_t k = 0; k < f.size(); ++k) {
            uint32_t a = f[k], b = f[(k + 1) % f.size()];
            if (a < b) fwd[{a, b}]++;
            else if (b < a) rev[{b, a}]++;
            else return false;
        }
    }
    if (fwd.size() != rev.size()) return false;
    for (const auto& [e, n] : fwd) {
        auto it = rev.find(e);
        if (n != 1 || it == rev.end() || it->second != 1) return false;
    }
    return true;
}

// Combinatorial counts used against the subdivision formulas.
struct MeshCounts {
    size_t vertices = 0, edges = 0, faces = 0, corner_sum = 0;
};

inline MeshCounts count_mesh(const Mesh& m) {
    MeshCounts c;
    c.vertices = m.vertices.size();
    c.faces = m.faces.size();
    std::map<std::pair<uint32_t, uint32_t>, int> edges;
    for (const auto& f : m.faces) {
        c.corner_sum += f.size();
        for (size_t k = 0; k < f.size(); ++k) {
            uint32_t a = f[k], b = f[(k + 1) % f.size()];
            edges[std::minmax(a, b)]++;
        }
    }
    c.edges = edges.size();
    return c;
}

// Signed volume oracle via the divergence theorem; mirrors the definition,
// not the library code path.
inline double signed_volume(const Mesh& m) {
    double v6 = 0.0;
    for (const auto& f : m.faces) {
        for (size_t i = 2; i < f.size(); ++i) {
            const Vec3& a = m.vertices[f[0]];
            const Vec3& b = m.vertices[f[i - 1]];
            const Vec3& c = m.vertices[f[i]];
            v6 += dot(a, cross(b, c));
        }
    }
    return v6 / 6.0;
}

} // namespace testsup
