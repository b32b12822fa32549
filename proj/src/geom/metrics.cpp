#include "bioforge/geom/metrics.hpp"

#include <numeric>
#include <vector>

namespace bioforge::geom {

namespace {

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    uint32_t find(uint32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

MeshMetrics mesh_metrics(const Mesh& mesh) {
    MeshMetrics m;
    m.bbox = mesh.bounds();

    double vol6 = 0.0;
    for (const auto& f : mesh.faces) {
        for (size_t i = 2; i < f.size(); ++i) {
            const Vec3& a = mesh.vertices[f[0]];
            const Vec3& b = mesh.vertices[f[i - 1]];
            const Vec3& c = mesh.vertices[f[i]];
            vol6 += dot(a, cross(b, c));
        }
    }
    m.volume = vol6 / 6.0;
    m.negative_volume = m.volume < 0.0;

    double bv = m.bbox.volume();
    m.porosity_vs_bbox = bv > 0.0 ? 1.0 - m.volume / bv : 0.0;

    UnionFind uf(mesh.vertices.size());
    for (const auto& f : mesh.faces) {
        for (size_t i = 1; i < f.size(); ++i) uf.unite(f[0], f[i]);
    }
    unsigned comps = 0;
    std::vector<bool> used(mesh.vertices.size(), false);
    for (const auto& f : mesh.faces) {
        for (uint32_t v : f) used[v] = true;
    }
    for (uint32_t v = 0; v < mesh.vertices.size(); ++v) {
        if (used[v] && uf.find(v) == v) ++comps;
    }
    m.component_hint = comps;
    return m;
}

} // namespace bioforge::geom
