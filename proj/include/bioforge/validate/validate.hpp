#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bioforge/exec.hpp"
#include "bioforge/geom/scene.hpp"

namespace bioforge::validate {

// Floating-part tolerance: components whose inflated AABBs touch nothing
// else are flagged.
inline constexpr double kFloatTolerance = 0.05;

struct ValidationReport {
    bool executed = false;
    uint32_t mesh_count = 0;
    std::vector<bool> watertight_per_mesh;
    uint32_t component_count = 0;
    std::vector<uint32_t> floating_components;
    uint64_t self_intersection_pairs = 0;
    geom::Box3 bbox;
    std::vector<std::string> warnings;

    bool all_watertight() const {
        for (bool w : watertight_per_mesh) {
            if (!w) return false;
        }
        return true;
    }
};

// Closed-orientable check: every undirected edge used exactly twice, once in
// each direction.
bool mesh_watertight(const geom::Mesh& mesh);

// Vertex sets of face-connected components across the merged scene, using a
// scene-wide vertex numbering (mesh offsets in order). Ordered by lowest
// vertex index.
std::vector<std::vector<uint32_t>> connected_components(const geom::Scene& scene);

// Read-only scan of a compiled scene. Triangle pair tests skip adjacent
// triangles, whitelisted mesh pairs, and coplanar contact.
ValidationReport validate_scene(const geom::Scene& scene, Exec exec = Exec::parallel);

std::string report_to_json(const ValidationReport& r);

} // namespace bioforge::validate
