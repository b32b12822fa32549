#include "bioforge/geom/convex.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bioforge::geom {

ConvexPoly ConvexPoly::box(const Box3& b) {
    Mesh m = make_box(b);
    ConvexPoly p;
    p.verts = m.vertices;
    for (const auto& f : m.faces) {
        std::vector<int> face(f.begin(), f.end());
        p.faces.push_back(std::move(face));
    }
    return p;
}

bool ConvexPoly::clip(const Vec3& n, double d, double eps) {
    if (faces.empty()) return false;

    std::vector<double> dist(verts.size());
    bool any_out = false, any_in = false;
    for (size_t i = 0; i < verts.size(); ++i) {
        dist[i] = dot(n, verts[i]) - d;
        if (dist[i] > eps) any_out = true;
        if (dist[i] < -eps) any_in = true;
    }
    if (!any_out) return true; // fully kept
    if (!any_in) {             // fully removed (or squashed onto the plane)
        verts.clear();
        faces.clear();
        return false;
    }

    std::vector<Vec3> new_verts;
    std::vector<int> remap(verts.size(), -1);
    auto keep_vertex = [&](int i) {
        if (remap[i] < 0) {
            remap[i] = static_cast<int>(new_verts.size());
            new_verts.push_back(verts[i]);
        }
        return remap[i];
    };

    // One intersection vertex per cut edge, shared between the two faces
    // that use the edge.
    std::map<std::pair<int, int>, int> edge_cut;
    auto cut_vertex = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = edge_cut.find(key);
        if (it != edge_cut.end()) return it->second;
        double t = dist[key.first] / (dist[key.first] - dist[key.second]);
        Vec3 p = verts[key.first] + (verts[key.second] - verts[key.first]) * t;
        int idx = static_cast<int>(new_verts.size());
        new_verts.push_back(p);
        edge_cut.emplace(key, idx);
        return idx;
    };

    std::vector<std::vector<int>> new_faces;
    std::vector<int> plane_verts; // vertices on the cut plane, for the cap
    bool have_cap_face = false;   // an existing face already lies in the plane
    auto note_plane_vertex = [&](int idx) {
        if (std::find(plane_verts.begin(), plane_verts.end(), idx) == plane_verts.end())
            plane_verts.push_back(idx);
    };

    for (const auto& face : faces) {
        bool all_on = true;
        for (int idx : face) all_on = all_on && std::fabs(dist[idx]) <= eps;
        if (all_on) have_cap_face = true;
        std::vector<int> nf;
        size_t m = face.size();
        for (size_t k = 0; k < m; ++k) {
            int a = face[k];
            int b = face[(k + 1) % m];
            bool a_out = dist[a] > eps;
            bool b_out = dist[b] > eps;
            bool a_on = std::fabs(dist[a]) <= eps;
            if (!a_out) {
                int idx = keep_vertex(a);
                nf.push_back(idx);
                if (a_on) note_plane_vertex(idx);
            }
            if ((a_out != b_out) && !a_on && std::fabs(dist[b]) > eps) {
                int idx = cut_vertex(a, b);
                nf.push_back(idx);
                note_plane_vertex(idx);
            }
        }
        // drop immediate repeats possibly produced by on-plane vertices
        std::vector<int> clean;
        for (int idx : nf) {
            if (clean.empty() || clean.back() != idx) clean.push_back(idx);
        }
        while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
        if (clean.size() >= 3) new_faces.push_back(std::move(clean));
    }

    // Cap face: angular sort around the centroid in the plane, oriented
    // along +n (the outward side of the cut).
    if (!have_cap_face && plane_verts.size() >= 3) {
        Vec3 c{0, 0, 0};
        for (int idx : plane_verts) c += new_verts[idx];
        c = c / static_cast<double>(plane_verts.size());
        Vec3 axis = normalized(n);
        Vec3 ref = std::fabs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        Vec3 u = normalized(cross(ref, axis));
        Vec3 w = cross(axis, u);
        std::vector<std::pair<double, int>> ang;
        ang.reserve(plane_verts.size());
        for (int idx : plane_verts) {
            Vec3 r = new_verts[idx] - c;
            ang.emplace_back(std::atan2(dot(r, w), dot(r, u)), idx);
        }
        std::sort(ang.begin(), ang.end());
        std::vector<int> cap;
        cap.reserve(ang.size());
        for (auto& [a, idx] : ang) cap.push_back(idx);
        // Newell normal check: cap must face along +n
        Vec3 nn{0, 0, 0};
        for (size_t k = 0; k < cap.size(); ++k) {
            const Vec3& p = new_verts[cap[k]];
            const Vec3& q = new_verts[cap[(k + 1) % cap.size()]];
            nn += cross(p, q);
        }
        if (dot(nn, axis) < 0) std::reverse(cap.begin(), cap.end());
        new_faces.push_back(std::move(cap));
    }

    verts = std::move(new_verts);
    faces = std::move(new_faces);
    if (faces.size() < 4) { // degenerate sliver
        verts.clear();
        faces.clear();
        return false;
    }
    return true;
}

Vec3 ConvexPoly::centroid() const {
    Vec3 c{0, 0, 0};
    if (verts.empty()) return c;
    for (const auto& v : verts) c += v;
    return c / static_cast<double>(verts.size());
}

double ConvexPoly::inradius(const Vec3& c) const {
    double best = std::numeric_limits<double>::max();
    for (const auto& f : faces) {
        if (f.size() < 3) continue;
        Vec3 n{0, 0, 0};
        for (size_t k = 0; k < f.size(); ++k) {
            n += cross(verts[f[k]], verts[f[(k + 1) % f.size()]]);
        }
        double len = n.length();
        if (len <= 0) continue;
        n = n / len;
        best = std::min(best, std::fabs(dot(n, c - verts[f[0]])));
    }
    return best == std::numeric_limits<double>::max() ? 0.0 : best;
}

double ConvexPoly::max_vertex_distance(const Vec3& p) const {
    double best = 0.0;
    for (const auto& v : verts) best = std::max(best, (v - p).length());
    return best;
}

void ConvexPoly::scale_about(const Vec3& c, double s) {
    for (auto& v : verts) v = c + (v - c) * s;
}

Mesh ConvexPoly::to_mesh() const {
    Mesh m;
    m.vertices = verts;
    m.faces.reserve(faces.size());
    for (const auto& f : faces) {
        m.faces.emplace_back(f.begin(), f.end());
    }
    return m;
}

} // namespace bioforge::geom
