#pragma once

#include "bioforge/geom/mesh.hpp"

namespace bioforge::geom {

struct MeshMetrics {
    double volume = 0.0; // signed, divergence theorem over triangles
    Box3 bbox;
    double porosity_vs_bbox = 0.0; // 1 - volume/bbox_volume
    unsigned component_hint = 0;   // face-connected components inside the mesh
    bool negative_volume = false;  // winding globally inverted
};

MeshMetrics mesh_metrics(const Mesh& mesh);

} // namespace bioforge::geom
