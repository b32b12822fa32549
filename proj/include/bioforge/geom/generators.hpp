#pragma once

#include <optional>
#include <vector>

#include "bioforge/exec.hpp"
#include "bioforge/geom/mesh.hpp"
#include "bioforge/geom/rng.hpp"

namespace bioforge::geom {

struct GradientSpec {
    int axis = 2; // 0=x 1=y 2=z
    double factor = 1.0;
};

struct HelicalParams {
    unsigned plies = 8;
    double ply_thickness = 0.5;
    double rotation_deg = 16.0;
    double noise_deg = 0.0;
    unsigned fibers_per_ply = 12;
    bool rectangular_fibers = false;
    double fiber_radius = 0.25;
    double fiber_width = 0.6;
    double footprint = 10.0;
    unsigned fiber_segments = 16;
};

struct CellularParams {
    unsigned region_count = 24;
    double randomness = 0.5;
    double wall_gap = 0.15;
    unsigned smooth_levels = 1;
    Vec3 domain{10.0, 10.0, 10.0};
    double sandwich_thickness = 0.0;
};

struct TubularParams {
    unsigned tubule_count = 16;
    double tubule_radius = 0.6;
    double ellipticity = 1.0;
    double spacing = 1.8;
    double cortical_thickness = 0.8;
    double slab_x = 10.0;
    double slab_y = 10.0;
    double height = 4.0;
    unsigned segments = 64;
    std::optional<GradientSpec> gradient;
};

// In-plane fiber angles per ply: theta_i = i*rotation + eps_i with
// eps_i ~ U(-noise, +noise) drawn in ply order from rng.
std::vector<double> helical_ply_angles(const HelicalParams& p, Rng& rng);

// One mesh per ply, fibers merged.
std::vector<Mesh> build_helical(const HelicalParams& p, Rng& rng);

struct CellularResult {
    std::vector<Mesh> meshes;              // surviving cells, then face sheets
    unsigned dropped_cells = 0;            // emptied by the wall-gap shrink
    std::vector<std::string> warnings;
};
CellularResult build_cellular(const CellularParams& p, Rng& rng, Exec exec = Exec::parallel);

struct TubularResult {
    std::vector<Mesh> meshes;  // matrix, then cortical shell when present
    bool has_shell = false;
};
TubularResult build_tubular(const TubularParams& p, Rng& rng);

// Hex-lattice candidate centers that fit the slab cross-section minus the
// cortical margin, nearest-to-center first. Returns at most `want` centers.
std::vector<Vec2> hex_centers(double slab_x, double slab_y, double cortical, double spacing,
                              double semi_x, double semi_y, size_t want);

struct SlabParams {
    double size_x = 10.0, size_y = 10.0, size_z = 2.0;
    double translate_x = 0.0, translate_y = 0.0, translate_z = 0.0;
    double rotate_z_deg = 0.0;
};
Mesh build_slab(const SlabParams& p);

struct PrimitiveParams {
    enum class Shape { cube, sphere, cylinder, cone } shape = Shape::cube;
    double size = 2.0;
    double radius = 1.0;
    double height = 2.0;
    unsigned segments = 24;
    unsigned count = 1;
    unsigned grid_x = 1, grid_y = 1;
    double spacing = 3.0;
    double ring_radius = 0.0;
    double rotate_z_deg = 0.0; // per-instance increment
    double scale_x = 1.0, scale_y = 1.0, scale_z = 1.0;
    double translate_x = 0.0, translate_y = 0.0, translate_z = 0.0;
    double hole_radius = 0.0;
};
// One mesh per instance.
std::vector<Mesh> build_primitive(const PrimitiveParams& p);

} // namespace bioforge::geom
