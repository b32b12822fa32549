#pragma once

#include <vector>

#include "bioforge/exec.hpp"
#include "bioforge/geom/convex.hpp"

namespace bioforge::geom {

// Clips the domain box against the bisector half-spaces of every other seed.
// Cells come back in seed order as closed convex meshes. Throws GeomError
// (DuplicateSeeds) on coincident seeds.
std::vector<ConvexPoly> voronoi_partition(const std::vector<Vec3>& seeds, const Box3& domain,
                                          Exec exec = Exec::parallel);

std::vector<Mesh> voronoi_cell_meshes(const std::vector<Vec3>& seeds, const Box3& domain,
                                      Exec exec = Exec::parallel);

} // namespace bioforge::geom
