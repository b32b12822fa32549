#include "bioforge/geom/subdivide.hpp"

#include <map>
#include <utility>

#include "bioforge/geom/errors.hpp"

namespace bioforge::geom {

namespace {

Mesh subdivide_once(const Mesh& in) {
    const size_t v_count = in.vertices.size();
    const size_t f_count = in.faces.size();

    // Edge table keyed (min,max); directed use counts enforce manifoldness.
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> edge_index;
    struct EdgeInfo {
        uint32_t a, b;
        int fwd = 0, rev = 0;
        uint32_t faces[2];
        int n_faces = 0;
    };
    std::vector<EdgeInfo> edges;

    auto edge_of = [&](uint32_t a, uint32_t b, uint32_t face) -> uint32_t {
        auto key = std::minmax(a, b);
        auto it = edge_index.find(key);
        uint32_t idx;
        if (it == edge_index.end()) {
            idx = static_cast<uint32_t>(edges.size());
            edge_index.emplace(key, idx);
            edges.push_back({key.first, key.second, 0, 0, {0, 0}, 0});
        } else {
            idx = it->second;
        }
        EdgeInfo& e = edges[idx];
        if (a == e.a) e.fwd++; else e.rev++;
        if (e.n_faces < 2) e.faces[e.n_faces] = face;
        e.n_faces++;
        return idx;
    };

    std::vector<std::vector<uint32_t>> face_edges(f_count);
    for (size_t f = 0; f < f_count; ++f) {
        const auto& face = in.faces[f];
        if (face.size() < 3) throw GeomError(GeomErrorCode::NotManifold, "degenerate face");
        face_edges[f].reserve(face.size());
        for (size_t k = 0; k < face.size(); ++k) {
            uint32_t a = face[k];
            uint32_t b = face[(k + 1) % face.size()];
            if (a == b) throw GeomError(GeomErrorCode::NotManifold, "zero-length edge");
            face_edges[f].push_back(edge_of(a, b, static_cast<uint32_t>(f)));
        }
    }
    for (const auto& e : edges) {
        if (e.n_faces != 2 || e.fwd != 1 || e.rev != 1) {
            throw GeomError(GeomErrorCode::NotManifold,
                            "catmull_clark input is not a closed 2-manifold");
        }
    }

    // Face points
    std::vector<Vec3> face_pt(f_count);
    for (size_t f = 0; f < f_count; ++f) {
        Vec3 c{0, 0, 0};
        for (uint32_t v : in.faces[f]) c += in.vertices[v];
        face_pt[f] = c / static_cast<double>(in.faces[f].size());
    }

    // Edge points: average of endpoints and the two adjacent face points.
    std::vector<Vec3> edge_pt(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        const EdgeInfo& ei = edges[e];
        edge_pt[e] = (in.vertices[ei.a] + in.vertices[ei.b] + face_pt[ei.faces[0]] +
                      face_pt[ei.faces[1]]) /
                     4.0;
    }

    // Updated originals: (Q + 2R + (n-3)V)/n
    std::vector<Vec3> q_sum(v_count, Vec3{0, 0, 0});
    std::vector<Vec3> r_sum(v_count, Vec3{0, 0, 0});
    std::vector<uint32_t> valence(v_count, 0);
    for (size_t f = 0; f < f_count; ++f) {
        for (uint32_t v : in.faces[f]) q_sum[v] += face_pt[f];
    }
    for (const auto& e : edges) {
        Vec3 mid = (in.vertices[e.a] + in.vertices[e.b]) * 0.5;
        r_sum[e.a] += mid;
        r_sum[e.b] += mid;
        valence[e.a]++;
        valence[e.b]++;
    }
    std::vector<Vec3> vert_pt(v_count);
    for (size_t v = 0; v < v_count; ++v) {
        double n = static_cast<double>(valence[v]);
        if (n < 3) throw GeomError(GeomErrorCode::NotManifold, "vertex valence below 3");
        Vec3 q = q_sum[v] / n;
        Vec3 r = r_sum[v] / n;
        vert_pt[v] = (q + r * 2.0 + in.vertices[v] * (n - 3.0)) / n;
    }

    Mesh out;
    out.label = in.label;
    out.vertices.reserve(v_count + f_count + edges.size());
    out.vertices.insert(out.vertices.end(), vert_pt.begin(), vert_pt.end());
    out.vertices.insert(out.vertices.end(), face_pt.begin(), face_pt.end());
    out.vertices.insert(out.vertices.end(), edge_pt.begin(), edge_pt.end());
    const uint32_t face_base = static_cast<uint32_t>(v_count);
    const uint32_t edge_base = static_cast<uint32_t>(v_count + f_count);

    for (size_t f = 0; f < f_count; ++f) {
        const auto& face = in.faces[f];
        const size_t m = face.size();
        for (size_t k = 0; k < m; ++k) {
            uint32_t v = face[k];
            uint32_t e_next = face_edges[f][k];             // edge (v, next)
            uint32_t e_prev = face_edges[f][(k + m - 1) % m]; // edge (prev, v)
            out.faces.push_back({v, edge_base + e_next, face_base + static_cast<uint32_t>(f),
                                 edge_base + e_prev});
        }
    }
    return out;
}

} // namespace

Mesh catmull_clark(const Mesh& mesh, unsigned levels) {
    if (levels > 3) {
        throw GeomError(GeomErrorCode::ValueOutOfRange, "subdivision level above 3");
    }
    Mesh out = mesh;
    for (unsigned i = 0; i < levels; ++i) out = subdivide_once(out);
    return out;
}

} // namespace bioforge::geom
