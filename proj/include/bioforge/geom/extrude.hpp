#pragma once

#include <array>
#include <vector>

#include "bioforge/geom/mesh.hpp"

namespace bioforge::geom {

double polygon_area(const std::vector<Vec2>& poly); // signed, CCW positive
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly);
bool polygon_self_intersects(const std::vector<Vec2>& poly);

// Ear-clipping triangulation of a multiply connected region. Rings are index
// lists into pts (outer CCW, holes CW); holes are bridged into the outer ring
// first. Returned triangles are CCW and reference pts indices.
std::vector<std::array<int, 3>> triangulate_rings(const std::vector<Vec2>& pts,
                                                  const std::vector<int>& outer_ring,
                                                  const std::vector<std::vector<int>>& hole_rings);

// Prism over a polygon with holes: caps are ear-clipped, side walls are
// quads, output is closed. hole_top_scale optionally tapers each hole about
// its centroid toward the top cap (frustum-shaped voids). Throws GeomError
// with HoleOverlap / HoleOutsideOuter / SelfIntersectingProfile.
Mesh extrude_profile(const std::vector<Vec2>& outer,
                     const std::vector<std::vector<Vec2>>& holes, double h,
                     const std::vector<double>& hole_top_scale = {});

// Regular n-gon approximating an ellipse, CCW, phase-offset by half a step;
// the polygon area is n/2 * a * b * sin(2*pi/n) regardless of phase.
std::vector<Vec2> ellipse_polygon(const Vec2& center, double semi_x, double semi_y, int segments);

} // namespace bioforge::geom
