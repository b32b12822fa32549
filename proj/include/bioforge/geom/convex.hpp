#pragma once

#include <vector>

#include "bioforge/geom/mesh.hpp"

namespace bioforge::geom {

// Convex polyhedron as an indexed face list, faces CCW outward. Supports
// successive half-space clipping; adjacent faces share intersection vertices
// exactly (edge-cached), so to_mesh() is watertight by construction.
struct ConvexPoly {
    std::vector<Vec3> verts;
    std::vector<std::vector<int>> faces;

    static ConvexPoly box(const Box3& b);

    // Clips against {x : dot(n,x) <= d}. Returns false when nothing remains.
    bool clip(const Vec3& n, double d, double eps = 1e-9);

    bool empty() const { return faces.empty(); }
    Vec3 centroid() const;                 // vertex average
    double inradius(const Vec3& c) const;  // min distance from c to a face plane
    double max_vertex_distance(const Vec3& p) const;
    void scale_about(const Vec3& c, double s);
    Mesh to_mesh() const;
};

} // namespace bioforge::geom
