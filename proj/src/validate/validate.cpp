#include "bioforge/validate/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

namespace bioforge::validate {

using geom::Box3;
using geom::Mesh;
using geom::Scene;
using geom::Vec3;

bool mesh_watertight(const Mesh& mesh) {
    if (mesh.faces.empty()) return false;
    std::map<std::pair<uint32_t, uint32_t>, std::pair<int, int>> edges; // (fwd, rev) counts
    for (const auto& f : mesh.faces) {
        if (f.size() < 3) return false;
        for (size_t k = 0; k < f.size(); ++k) {
            uint32_t a = f[k];
            uint32_t b = f[(k + 1) % f.size()];
            if (a == b) return false;
            auto key = std::minmax(a, b);
            auto& e = edges[key];
            if (a == key.first) e.first++; else e.second++;
        }
    }
    for (const auto& [key, counts] : edges) {
        if (counts.first != 1 || counts.second != 1) return false;
    }
    return true;
}

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

struct Tri {
    Vec3 a, b, c;
    uint32_t va, vb, vc; // scene-wide vertex ids
    uint32_t mesh = 0;
    uint32_t comp = 0;
    Box3 box;
};

constexpr double kEps = 1e-7;

// Interval of a triangle on the plane-intersection line. Returns false when
// the triangle does not properly cross the plane.
bool cross_interval(const Vec3& p, const Vec3& q, const Vec3& r, const double d[3],
                    const Vec3& line_dir, double& lo, double& hi) {
    const Vec3* v[3] = {&p, &q, &r};
    double t[2];
    int n = 0;
    for (int i = 0; i < 3 && n < 2; ++i) {
        int j = (i + 1) % 3;
        if (std::fabs(d[i]) <= kEps) {
            t[n++] = dot(line_dir, *v[i]);
        } else if (d[i] * d[j] < 0.0 && std::fabs(d[j]) > kEps) {
            double f = d[i] / (d[i] - d[j]);
            Vec3 x = *v[i] + (*v[j] - *v[i]) * f;
            t[n++] = dot(line_dir, x);
        }
    }
    if (n < 2) return false;
    lo = std::min(t[0], t[1]);
    hi = std::max(t[0], t[1]);
    return true;
}

// Proper (non-coplanar, non-touching) triangle-triangle intersection.
// Each triangle must strictly straddle the other's plane: an edge or vertex
// resting on the plane is contact, not penetration.
bool tri_tri_intersect(const Tri& t1, const Tri& t2) {
    Vec3 n1 = cross(t1.b - t1.a, t1.c - t1.a);
    double len1 = n1.length();
    if (len1 <= 0) return false;
    n1 = n1 / len1;
    double d2[3] = {dot(n1, t2.a - t1.a), dot(n1, t2.b - t1.a), dot(n1, t2.c - t1.a)};
    bool pos2 = d2[0] > kEps || d2[1] > kEps || d2[2] > kEps;
    bool neg2 = d2[0] < -kEps || d2[1] < -kEps || d2[2] < -kEps;
    if (!pos2 || !neg2) return false;

    Vec3 n2 = cross(t2.b - t2.a, t2.c - t2.a);
    double len2 = n2.length();
    if (len2 <= 0) return false;
    n2 = n2 / len2;
    double d1[3] = {dot(n2, t1.a - t2.a), dot(n2, t1.b - t2.a), dot(n2, t1.c - t2.a)};
    bool pos1 = d1[0] > kEps || d1[1] > kEps || d1[2] > kEps;
    bool neg1 = d1[0] < -kEps || d1[1] < -kEps || d1[2] < -kEps;
    if (!pos1 || !neg1) return false;

    Vec3 line = cross(n1, n2);
    if (line.length_sq() <= 1e-20) return false;

    double lo1, hi1, lo2, hi2;
    if (!cross_interval(t1.a, t1.b, t1.c, d1, line, lo1, hi1)) return false;
    if (!cross_interval(t2.a, t2.b, t2.c, d2, line, lo2, hi2)) return false;
    return std::min(hi1, hi2) - std::max(lo1, lo2) > kEps;
}

struct BvhNode {
    Box3 box;
    int left = -1, right = -1;
    uint32_t begin = 0, count = 0; // leaf triangle range
};

struct Bvh {
    std::vector<BvhNode> nodes;
    std::vector<uint32_t> order; // triangle indices, leaf-contiguous

    void build(const std::vector<Tri>& tris) {
        order.resize(tris.size());
        std::iota(order.begin(), order.end(), 0u);
        nodes.clear();
        if (!tris.empty()) build_node(tris, 0, static_cast<uint32_t>(tris.size()));
    }

    int build_node(const std::vector<Tri>& tris, uint32_t begin, uint32_t end) {
        int idx = static_cast<int>(nodes.size());
        nodes.push_back({});
        Box3 box;
        for (uint32_t i = begin; i < end; ++i) box.expand(tris[order[i]].box);
        nodes[idx].box = box;
        if (end - begin <= 8) {
            nodes[idx].begin = begin;
            nodes[idx].count = end - begin;
            return idx;
        }
        Vec3 ext = box.extent();
        int axis = ext.x >= ext.y && ext.x >= ext.z ? 0 : (ext.y >= ext.z ? 1 : 2);
        uint32_t mid = (begin + end) / 2;
        std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                         [&](uint32_t a, uint32_t b) {
                             Vec3 ca = tris[a].box.center();
                             Vec3 cb = tris[b].box.center();
                             double xa = axis == 0 ? ca.x : (axis == 1 ? ca.y : ca.z);
                             double xb = axis == 0 ? cb.x : (axis == 1 ? cb.y : cb.z);
                             if (xa != xb) return xa < xb;
                             return a < b;
                         });
        int l = build_node(tris, begin, mid);
        int r = build_node(tris, mid, end);
        nodes[idx].left = l;
        nodes[idx].right = r;
        return idx;
    }

    template <typename Fn>
    void query(const Box3& box, Fn&& fn) const {
        if (nodes.empty()) return;
        int stack[64];
        int top = 0;
        stack[top++] = 0;
        while (top > 0) {
            const BvhNode& n = nodes[stack[--top]];
            if (!n.box.intersects(box)) continue;
            if (n.left < 0) {
                for (uint32_t i = n.begin; i < n.begin + n.count; ++i) fn(order[i]);
            } else {
                stack[top++] = n.left;
                stack[top++] = n.right;
            }
        }
    }
};

bool shares_vertex(const Tri& a, const Tri& b) {
    for (uint32_t x : {a.va, a.vb, a.vc}) {
        for (uint32_t y : {b.va, b.vb, b.vc}) {
            if (x == y) return true;
        }
    }
    return false;
}

uint64_t count_pairs_for(uint32_t i, const std::vector<Tri>& tris, const Bvh& bvh,
                         const std::vector<std::pair<uint32_t, uint32_t>>& whitelist) {
    const Tri& t = tris[i];
    uint64_t count = 0;
    bvh.query(t.box, [&](uint32_t j) {
        if (j <= i) return;
        const Tri& u = tris[j];
        if (t.mesh != u.mesh) {
            auto key = std::minmax(t.mesh, u.mesh);
            for (const auto& w : whitelist) {
                if (std::minmax(w.first, w.second) == key) return;
            }
        } else if (t.comp == u.comp && shares_vertex(t, u)) {
            return;
        }
        if (tri_tri_intersect(t, u)) ++count;
    });
    return count;
}

} // namespace

std::vector<std::vector<uint32_t>> connected_components(const Scene& scene) {
    size_t total = 0;
    for (const auto& m : scene.meshes) total += m.vertices.size();
    UnionFind uf(total);
    size_t base = 0;
    for (const auto& m : scene.meshes) {
        for (const auto& f : m.faces) {
            for (size_t i = 1; i < f.size(); ++i) {
                uf.unite(static_cast<uint32_t>(base + f[0]), static_cast<uint32_t>(base + f[i]));
            }
        }
        base += m.vertices.size();
    }
    std::map<uint32_t, std::vector<uint32_t>> by_root;
    for (uint32_t v = 0; v < total; ++v) {
        by_root[uf.find(v)].push_back(v);
    }
    std::vector<std::vector<uint32_t>> out;
    out.reserve(by_root.size());
    for (auto& [root, verts] : by_root) out.push_back(std::move(verts));
    return out; // keyed by lowest vertex (root is the minimum by construction)
}

ValidationReport validate_scene(const Scene& scene, Exec exec) {
    ValidationReport r;
    r.executed = !scene.meshes.empty();
    r.mesh_count = static_cast<uint32_t>(scene.meshes.size());
    r.warnings = scene.warnings;
    for (const auto& m : scene.meshes) {
        r.watertight_per_mesh.push_back(mesh_watertight(m));
        r.bbox.expand(m.bounds());
    }

    auto comps = connected_components(scene);
    r.component_count = static_cast<uint32_t>(comps.size());

    // scene-wide vertex positions and per-vertex component ids
    std::vector<Vec3> pos;
    std::vector<uint32_t> mesh_of_vertex;
    pos.reserve(1024);
    for (uint32_t mi = 0; mi < scene.meshes.size(); ++mi) {
        for (const auto& v : scene.meshes[mi].vertices) {
            pos.push_back(v);
            mesh_of_vertex.push_back(mi);
        }
    }
    std::vector<uint32_t> comp_of_vertex(pos.size(), 0);
    for (uint32_t ci = 0; ci < comps.size(); ++ci) {
        for (uint32_t v : comps[ci]) comp_of_vertex[v] = ci;
    }

    // floating components: inflated AABB touches no other component AABB
    if (comps.size() >= 2) {
        std::vector<Box3> comp_box(comps.size());
        for (uint32_t ci = 0; ci < comps.size(); ++ci) {
            for (uint32_t v : comps[ci]) comp_box[ci].expand(pos[v]);
        }
        for (uint32_t ci = 0; ci < comps.size(); ++ci) {
            Box3 inflated = comp_box[ci].inflated(kFloatTolerance);
            bool touches = false;
            for (uint32_t cj = 0; cj < comps.size() && !touches; ++cj) {
                if (cj != ci) touches = inflated.intersects(comp_box[cj]);
            }
            if (!touches) r.floating_components.push_back(ci);
        }
    }

    // triangle soup with adjacency info
    std::vector<Tri> tris;
    size_t base = 0;
    for (uint32_t mi = 0; mi < scene.meshes.size(); ++mi) {
        const Mesh& m = scene.meshes[mi];
        for (const auto& f : m.faces) {
            for (size_t k = 2; k < f.size(); ++k) {
                Tri t;
                t.va = static_cast<uint32_t>(base + f[0]);
                t.vb = static_cast<uint32_t>(base + f[k - 1]);
                t.vc = static_cast<uint32_t>(base + f[k]);
                t.a = pos[t.va];
                t.b = pos[t.vb];
                t.c = pos[t.vc];
                t.mesh = mi;
                t.comp = comp_of_vertex[t.va];
                t.box.expand(t.a);
                t.box.expand(t.b);
                t.box.expand(t.c);
                tris.push_back(t);
            }
        }
        base += m.vertices.size();
    }

    Bvh bvh;
    bvh.build(tris);

    uint64_t pairs = 0;
    const long long n = static_cast<long long>(tris.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : pairs)
        for (long long i = 0; i < n; ++i) {
            pairs += count_pairs_for(static_cast<uint32_t>(i), tris, bvh,
                                     scene.allowed_overlaps);
        }
    } else {
        for (long long i = 0; i < n; ++i) {
            pairs += count_pairs_for(static_cast<uint32_t>(i), tris, bvh,
                                     scene.allowed_overlaps);
        }
    }
    r.self_intersection_pairs = pairs;
    return r;
}

std::string report_to_json(const ValidationReport& r) {
    nlohmann::json j;
    j["executed"] = r.executed;
    j["mesh_count"] = r.mesh_count;
    j["watertight_per_mesh"] = r.watertight_per_mesh;
    j["component_count"] = r.component_count;
    j["floating_components"] = r.floating_components;
    j["self_intersection_pairs"] = r.self_intersection_pairs;
    j["bbox"]["min"] = {r.bbox.lo.x, r.bbox.lo.y, r.bbox.lo.z};
    j["bbox"]["max"] = {r.bbox.hi.x, r.bbox.hi.y, r.bbox.hi.z};
    j["warnings"] = r.warnings;
    return j.dump(2);
}

} // namespace bioforge::validate
