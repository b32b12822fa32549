#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bioforge/geom/scene.hpp"

namespace bioforge::io {

// Binary little-endian STL: 80-byte header, uint32 triangle count, then 50
// bytes per triangle (normal, 3 vertices as float32, uint16 attribute).
// Normals are recomputed from winding. Returns bytes written
// (84 + 50 * triangles).
size_t export_stl(const geom::Scene& scene, const std::string& path);

std::vector<uint8_t> stl_bytes(const geom::Scene& scene);

struct StlTriangle {
    float nx, ny, nz;
    float v[3][3];
};

// Reads a binary STL back as a triangle soup.
std::vector<StlTriangle> read_stl(const std::string& path);
std::vector<StlTriangle> parse_stl(const std::vector<uint8_t>& bytes);

} // namespace bioforge::io
