#include <algorithm>
#include <cmath>

#include "bioforge/geom/errors.hpp"
#include "bioforge/geom/extrude.hpp"
#include "bioforge/geom/generators.hpp"

namespace bioforge::geom {

std::vector<Vec2> hex_centers(double slab_x, double slab_y, double cortical, double spacing,
                              double semi_x, double semi_y, size_t want) {
    const double margin = 1e-9;
    const double lo_x = cortical + semi_x + margin;
    const double hi_x = slab_x - cortical - semi_x - margin;
    const double lo_y = cortical + semi_y + margin;
    const double hi_y = slab_y - cortical - semi_y - margin;
    std::vector<Vec2> candidates;
    if (hi_x < lo_x || hi_y < lo_y || want == 0) return candidates;

    const double cx = slab_x * 0.5, cy = slab_y * 0.5;
    const double dy = spacing * 0.8660254037844386; // sqrt(3)/2
    const int rows = static_cast<int>(std::floor((hi_y - lo_y) / dy)) + 2;
    const int cols = static_cast<int>(std::floor((hi_x - lo_x) / spacing)) + 2;

    for (int r = -rows; r <= rows; ++r) {
        double y = cy + r * dy;
        if (y < lo_y || y > hi_y) continue;
        double x_off = (r & 1) ? 0.5 * spacing : 0.0;
        for (int c = -cols; c <= cols; ++c) {
            double x = cx + c * spacing + x_off;
            if (x < lo_x || x > hi_x) continue;
            candidates.push_back({x, y});
        }
    }
    // nearest to the slab center first, deterministic tie-break
    std::sort(candidates.begin(), candidates.end(), [&](const Vec2& a, const Vec2& b) {
        double da = (a.x - cx) * (a.x - cx) + (a.y - cy) * (a.y - cy);
        double db = (b.x - cx) * (b.x - cx) + (b.y - cy) * (b.y - cy);
        if (da != db) return da < db;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    if (candidates.size() > want) candidates.resize(want);
    return candidates;
}

TubularResult build_tubular(const TubularParams& p, Rng& rng) {
    (void)rng; // reserved for future center jitter
    TubularResult result;

    double grad_lo = 1.0, grad_hi = 1.0;
    if (p.gradient) {
        double f = p.gradient->factor;
        grad_lo = 1.0 / f;
        grad_hi = f;
    }
    const double max_scale = std::max(grad_lo, grad_hi);
    const double semi_x = p.tubule_radius * p.ellipticity;
    const double semi_y = p.tubule_radius;
    const double max_semi = std::max(semi_x, semi_y) * max_scale;

    if (p.tubule_count > 0 && p.spacing <= 2.0 * max_semi) {
        throw GeomError(GeomErrorCode::TubuleOverlap,
                        "tubule spacing must exceed twice the largest semi-axis", "spacing",
                        2.2 * max_semi);
    }

    const double ct = p.cortical_thickness;
    std::vector<Vec2> centers = hex_centers(p.slab_x, p.slab_y, ct, p.spacing,
                                            semi_x * max_scale, semi_y * max_scale,
                                            p.tubule_count);
    if (centers.size() < p.tubule_count) {
        throw GeomError(GeomErrorCode::TubuleOutsideCortex,
                        "only " + std::to_string(centers.size()) +
                            " tubules fit inside the cortical margin",
                        "tubule_count", static_cast<double>(centers.size()));
    }

    // inner matrix profile (slab minus cortical band)
    std::vector<Vec2> inner_rect = {
        {ct, ct}, {p.slab_x - ct, ct}, {p.slab_x - ct, p.slab_y - ct}, {ct, p.slab_y - ct}};

    std::vector<std::vector<Vec2>> holes;
    std::vector<double> top_scales;
    holes.reserve(centers.size());
    for (const Vec2& c : centers) {
        double scale_bottom = 1.0, scale_top = 1.0;
        if (p.gradient) {
            if (p.gradient->axis == 2) {
                scale_bottom = grad_lo;
                scale_top = grad_hi;
            } else {
                double lo = ct + (p.gradient->axis == 0 ? semi_x : semi_y) * max_scale;
                double hi = (p.gradient->axis == 0 ? p.slab_x : p.slab_y) - lo;
                double t = 0.5;
                if (hi > lo) {
                    double coord = p.gradient->axis == 0 ? c.x : c.y;
                    t = std::clamp((coord - lo) / (hi - lo), 0.0, 1.0);
                }
                scale_bottom = scale_top = grad_lo + (grad_hi - grad_lo) * t;
            }
        }
        holes.push_back(ellipse_polygon(c, semi_x * scale_bottom, semi_y * scale_bottom,
                                        static_cast<int>(p.segments)));
        top_scales.push_back(scale_top / scale_bottom);
    }

    Mesh matrix = extrude_profile(inner_rect, holes, p.height, top_scales);
    matrix.label = "tubular";
    result.meshes.push_back(std::move(matrix));

    if (ct > 0.0) {
        std::vector<Vec2> outer_rect = {
            {0, 0}, {p.slab_x, 0}, {p.slab_x, p.slab_y}, {0, p.slab_y}};
        Mesh shell = extrude_profile(outer_rect, {inner_rect}, p.height);
        shell.label = "tubular";
        result.meshes.push_back(std::move(shell));
        result.has_shell = true;
    }
    return result;
}

} // namespace bioforge::geom
