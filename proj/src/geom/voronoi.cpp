#include "bioforge/geom/voronoi.hpp"

#include <algorithm>
#include <cmath>

#include "bioforge/geom/errors.hpp"

namespace bioforge::geom {

namespace {

ConvexPoly build_cell(size_t i, const std::vector<Vec3>& seeds, const Box3& domain,
                      const std::vector<std::vector<uint32_t>>& order) {
    ConvexPoly cell = ConvexPoly::box(domain);
    const Vec3& si = seeds[i];
    double reach = cell.max_vertex_distance(si);
    for (uint32_t j : order[i]) {
        Vec3 diff = seeds[j] - si;
        double d = diff.length();
        // A seed farther than twice the current reach cannot cut the cell.
        if (d > 2.0 * reach) break;
        Vec3 n = diff / d;
        Vec3 mid = (si + seeds[j]) * 0.5;
        if (!cell.clip(n, dot(n, mid))) break;
        reach = cell.max_vertex_distance(si);
    }
    return cell;
}

} // namespace

std::vector<ConvexPoly> voronoi_partition(const std::vector<Vec3>& seeds, const Box3& domain,
                                          Exec exec) {
    if (seeds.empty()) {
        throw GeomError(GeomErrorCode::DuplicateSeeds, "voronoi_partition needs at least one seed");
    }
    for (size_t i = 0; i < seeds.size(); ++i) {
        for (size_t j = i + 1; j < seeds.size(); ++j) {
            if (seeds[i] == seeds[j]) {
                throw GeomError(GeomErrorCode::DuplicateSeeds, "coincident voronoi seeds");
            }
        }
    }

    const size_t n = seeds.size();
    // Per-seed neighbor order by distance, fixed up front so serial and
    // parallel runs do identical work per cell.
    std::vector<std::vector<uint32_t>> order(n);
    for (size_t i = 0; i < n; ++i) {
        order[i].reserve(n - 1);
        for (size_t j = 0; j < n; ++j) {
            if (j != i) order[i].push_back(static_cast<uint32_t>(j));
        }
        std::sort(order[i].begin(), order[i].end(), [&](uint32_t a, uint32_t b) {
            double da = (seeds[a] - seeds[i]).length_sq();
            double db = (seeds[b] - seeds[i]).length_sq();
            if (da != db) return da < db;
            return a < b;
        });
    }

    std::vector<ConvexPoly> cells(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            cells[i] = build_cell(static_cast<size_t>(i), seeds, domain, order);
        }
    } else {
        for (size_t i = 0; i < n; ++i) {
            cells[i] = build_cell(i, seeds, domain, order);
        }
    }
    return cells;
}

std::vector<Mesh> voronoi_cell_meshes(const std::vector<Vec3>& seeds, const Box3& domain,
                                      Exec exec) {
    auto cells = voronoi_partition(seeds, domain, exec);
    std::vector<Mesh> meshes;
    meshes.reserve(cells.size());
    for (auto& c : cells) meshes.push_back(c.to_mesh());
    return meshes;
}

} // namespace bioforge::geom
