#include <algorithm>
#include <cmath>

#include "bioforge/geom/generators.hpp"
#include "bioforge/geom/subdivide.hpp"
#include "bioforge/geom/voronoi.hpp"

namespace bioforge::geom {

namespace {

// Smallest near-cubic lattice with nx*ny*nz >= n, axes proportioned to the
// domain extents.
void lattice_dims(unsigned n, const Vec3& domain, unsigned& nx, unsigned& ny, unsigned& nz) {
    double volume = domain.x * domain.y * domain.z;
    double pitch = std::cbrt(volume / std::max(1u, n));
    auto dim = [&](double extent) {
        return std::max(1u, static_cast<unsigned>(std::ceil(extent / pitch - 1e-9)));
    };
    nx = dim(domain.x);
    ny = dim(domain.y);
    nz = dim(domain.z);
    while (nx * ny * nz < n) {
        // grow the axis with the largest cell pitch
        double px = domain.x / nx, py = domain.y / ny, pz = domain.z / nz;
        if (px >= py && px >= pz) ++nx;
        else if (py >= pz) ++ny;
        else ++nz;
    }
}

} // namespace

CellularResult build_cellular(const CellularParams& p, Rng& rng, Exec exec) {
    CellularResult result;
    unsigned nx, ny, nz;
    lattice_dims(p.region_count, p.domain, nx, ny, nz);
    const double px = p.domain.x / nx, py = p.domain.y / ny, pz = p.domain.z / nz;

    // Jittered lattice seeds, first region_count sites in (z,y,x) order.
    std::vector<Vec3> seeds;
    seeds.reserve(p.region_count);
    for (unsigned iz = 0; iz < nz && seeds.size() < p.region_count; ++iz) {
        for (unsigned iy = 0; iy < ny && seeds.size() < p.region_count; ++iy) {
            for (unsigned ix = 0; ix < nx && seeds.size() < p.region_count; ++ix) {
                Vec3 c{(ix + 0.5) * px, (iy + 0.5) * py, (iz + 0.5) * pz};
                double jx = p.randomness * 0.5 * px * (2.0 * rng.next_double() - 1.0);
                double jy = p.randomness * 0.5 * py * (2.0 * rng.next_double() - 1.0);
                double jz = p.randomness * 0.5 * pz * (2.0 * rng.next_double() - 1.0);
                seeds.push_back(c + Vec3{jx, jy, jz});
            }
        }
    }

    Box3 domain{{0, 0, 0}, {p.domain.x, p.domain.y, p.domain.z}};
    std::vector<ConvexPoly> cells = voronoi_partition(seeds, domain, exec);

    for (size_t i = 0; i < cells.size(); ++i) {
        ConvexPoly& cell = cells[i];
        if (cell.empty()) {
            result.dropped_cells++;
            result.warnings.push_back("DegenerateCell: cell " + std::to_string(i) + " dropped");
            continue;
        }
        Vec3 c = cell.centroid();
        double rin = cell.inradius(c);
        if (p.wall_gap > 0.0) {
            double shrink = 0.5 * p.wall_gap;
            if (rin <= shrink) {
                result.dropped_cells++;
                result.warnings.push_back("DegenerateCell: cell " + std::to_string(i) +
                                          " emptied by wall gap");
                continue;
            }
            // clamp guard: never shrink past 90% of the inradius
            double s = 1.0 - std::min(shrink, 0.9 * rin) / rin;
            cell.scale_about(c, s);
        }
        Mesh m = cell.to_mesh();
        m.label = "cellular";
        if (p.smooth_levels > 0) m = catmull_clark(m, p.smooth_levels);
        m.label = "cellular";
        result.meshes.push_back(std::move(m));
    }

    if (p.sandwich_thickness > 0.0) {
        Mesh bottom = make_box({{0, 0, -p.sandwich_thickness}, {p.domain.x, p.domain.y, 0}});
        Mesh top = make_box({{0, 0, p.domain.z}, {p.domain.x, p.domain.y,
                                                   p.domain.z + p.sandwich_thickness}});
        bottom.label = "cellular";
        top.label = "cellular";
        result.meshes.push_back(std::move(bottom));
        result.meshes.push_back(std::move(top));
    }
    return result;
}

} // namespace bioforge::geom
