#pragma once

#include "bioforge/geom/mesh.hpp"

namespace bioforge::geom {

// Catmull-Clark subdivision. Input must be a closed 2-manifold (every edge
// shared by exactly two consistently oriented faces); throws GeomError
// (NotManifold) otherwise. Output is all quads and closed. levels in [0,3].
Mesh catmull_clark(const Mesh& mesh, unsigned levels);

} // namespace bioforge::geom
