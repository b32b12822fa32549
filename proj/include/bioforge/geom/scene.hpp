#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bioforge/dsl/ast.hpp"
#include "bioforge/geom/mesh.hpp"

namespace bioforge::geom {

// Construction metadata for one compiled block: resolved parameter values
// and the mesh range it produced. The critic reads parameters from here.
struct BlockInfo {
    dsl::BlockKind kind = dsl::BlockKind::slab;
    std::map<std::string, double> params;
    std::map<std::string, std::string> word_params;
    std::vector<dsl::Modifier> modifiers;
    size_t mesh_begin = 0;
    size_t mesh_count = 0;
};

struct Scene {
    std::vector<Mesh> meshes;
    std::string program_name;
    uint64_t seed = 0;
    std::vector<BlockInfo> blocks;
    // Disjoint parts are intentional (cellular assemblies, instance arrays).
    bool multi_component_intended = false;
    // Mesh pairs allowed to touch/overlap (cortical shell against matrix).
    std::vector<std::pair<uint32_t, uint32_t>> allowed_overlaps;
    std::vector<std::string> warnings;

    size_t triangle_count() const {
        size_t n = 0;
        for (const auto& m : meshes) n += m.triangle_count();
        return n;
    }
    Box3 bounds() const {
        Box3 b;
        for (const auto& m : meshes) b.expand(m.bounds());
        return b;
    }
};

// Aggregated shape summary; retrieval stores these next to captions.
struct SceneDescriptor {
    std::vector<std::string> classes;
    uint32_t mesh_count = 0;
    double volume = 0.0;
    Box3 bbox;
    double porosity = 0.0;
    uint32_t components = 0;
};

SceneDescriptor describe_scene(const Scene& scene);

} // namespace bioforge::geom
