#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bioforge/geom/vec3.hpp"

namespace bioforge::geom {

// Indexed polygon mesh. Faces are CCW as seen from outside. A mesh may hold
// several disjoint closed shells (e.g. all fibers of one ply).
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::vector<uint32_t>> faces;
    std::string label;

    size_t vertex_count() const { return vertices.size(); }
    size_t face_count() const { return faces.size(); }

    // Fan triangulation of every polygon. Faces are convex by construction
    // wherever polygons with more than 3 vertices appear.
    std::vector<std::array<uint32_t, 3>> triangles() const;

    size_t triangle_count() const;

    Box3 bounds() const;

    // Appends another mesh, remapping its indices.
    void append(const Mesh& other);

    void translate(const Vec3& d);
};

// Axis-aligned solid box as a 6-quad mesh.
Mesh make_box(const Box3& b);

} // namespace bioforge::geom
