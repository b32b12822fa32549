#include "bioforge/geom/extrude.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bioforge/geom/errors.hpp"

namespace bioforge::geom {

double polygon_area(const std::vector<Vec2>& poly) {
    double a = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        a += cross2(p, q);
    }
    return 0.5 * a;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
    bool inside = false;
    for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double t = (p.y - a.y) / (b.y - a.y);
            if (p.x < a.x + t * (b.x - a.x)) inside = !inside;
        }
    }
    return inside;
}

namespace {

constexpr double kEps = 1e-12;

int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    double v = cross2(b - a, c - a);
    if (v > kEps) return 1;
    if (v < -kEps) return -1;
    return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) - kEps <= p.x && p.x <= std::max(a.x, b.x) + kEps &&
           std::min(a.y, b.y) - kEps <= p.y && p.y <= std::max(a.y, b.y) + kEps;
}

// Proper or touching intersection of two segments.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool polygons_touch(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        const Vec2& p0 = a[i];
        const Vec2& p1 = a[(i + 1) % a.size()];
        for (size_t j = 0; j < b.size(); ++j) {
            if (segments_intersect(p0, p1, b[j], b[(j + 1) % b.size()])) return true;
        }
    }
    return point_in_polygon(a[0], b) || point_in_polygon(b[0], a);
}

} // namespace

bool polygon_self_intersects(const std::vector<Vec2>& poly) {
    const size_t n = poly.size();
    if (n < 3) return true;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) return true;
        }
    }
    return false;
}

namespace {

bool point_in_triangle_strict(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    double d1 = cross2(b - a, p - a);
    double d2 = cross2(c - b, p - b);
    double d3 = cross2(a - c, p - c);
    return d1 > kEps && d2 > kEps && d3 > kEps;
}

bool same_point(const Vec2& a, const Vec2& b) {
    return std::fabs(a.x - b.x) <= kEps && std::fabs(a.y - b.y) <= kEps;
}

// Eberly-style bridge: connects the hole's max-x vertex to a visible vertex
// of the current outer polygon via a +x ray.
void splice_hole(std::vector<int>& poly, const std::vector<Vec2>& pts,
                 const std::vector<int>& hole) {
    // hole vertex of max x (ties: max y)
    size_t mi = 0;
    for (size_t i = 1; i < hole.size(); ++i) {
        const Vec2& v = pts[hole[i]];
        const Vec2& m = pts[hole[mi]];
        if (v.x > m.x || (v.x == m.x && v.y > m.y)) mi = i;
    }
    const Vec2 M = pts[hole[mi]];

    // closest +x ray hit on the current polygon; among coincident hits
    // (doubled bridge edges) keep the occurrence with M on its left, which
    // is the side whose local interior contains M
    double best_x = std::numeric_limits<double>::max();
    size_t best_edge = SIZE_MAX;
    bool best_left = false;
    const double tie_tol = 1e-9;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = pts[poly[i]];
        const Vec2& b = pts[poly[(i + 1) % poly.size()]];
        if ((a.y > M.y) == (b.y > M.y)) continue;
        double t = (M.y - a.y) / (b.y - a.y);
        double ix = a.x + t * (b.x - a.x);
        if (ix < M.x - kEps) continue;
        bool left = cross2(b - a, M - a) > 0;
        if (ix < best_x - tie_tol || (std::fabs(ix - best_x) <= tie_tol && left && !best_left)) {
            best_x = ix;
            best_edge = i;
            best_left = left;
        }
    }
    if (best_edge == SIZE_MAX) {
        throw GeomError(GeomErrorCode::HoleOutsideOuter, "hole is not inside the outer profile");
    }

    const Vec2 I{best_x, M.y};
    size_t chosen = SIZE_MAX;

    // hit lands on a vertex of the intersected edge: bridge straight to it
    const double vert_tol = 1e-9;
    for (size_t cand : {best_edge, (best_edge + 1) % poly.size()}) {
        const Vec2& v = pts[poly[cand]];
        if (std::fabs(v.y - M.y) <= vert_tol && std::fabs(v.x - best_x) <= 1e-6 &&
            v.x > M.x) {
            chosen = cand;
            break;
        }
    }

    if (chosen == SIZE_MAX) {
        // candidate bridge endpoint: the intersected edge endpoint with larger x
        size_t cand_pos = best_edge;
        size_t other = (best_edge + 1) % poly.size();
        if (pts[poly[other]].x > pts[poly[cand_pos]].x) cand_pos = other;

        // any reflex vertex inside triangle (M, I, P) takes precedence
        Vec2 P = pts[poly[cand_pos]];
        double best_metric = std::numeric_limits<double>::max();
        chosen = cand_pos;
        for (size_t i = 0; i < poly.size(); ++i) {
            if (i == cand_pos) continue;
            const Vec2& r = pts[poly[i]];
            if (same_point(r, P) || same_point(r, M)) continue;
            size_t prev = (i + poly.size() - 1) % poly.size();
            size_t next = (i + 1) % poly.size();
            bool reflex = orient(pts[poly[prev]], r, pts[poly[next]]) < 0;
            if (!reflex) continue;
            // triangle winding depends on whether P is above or below the ray
            bool in_tri = point_in_triangle_strict(r, M, I, P) ||
                          point_in_triangle_strict(r, M, P, I);
            if (!in_tri) continue;
            Vec2 d = r - M;
            double angle_metric = std::fabs(d.y) / std::max(d.x, kEps); // tan of angle to +x
            double dist = d.x * d.x + d.y * d.y;
            double metric = angle_metric * 1e6 + dist;
            if (metric < best_metric) {
                best_metric = metric;
                chosen = i;
            }
        }
    }

    // A vertex already serving as a bridge endpoint must not be reused:
    // a third occurrence pinches the polygon and ear clipping deadlocks.
    // Bridge to the nearest visible single-occurrence vertex instead.
    std::vector<int> uses(pts.size(), 0);
    for (int idx : poly) uses[idx]++;
    if (uses[poly[chosen]] >= 2) {
        auto segment_clear = [&](const Vec2& v, int v_idx) {
            for (size_t e = 0; e < poly.size(); ++e) {
                int ia = poly[e];
                int ib = poly[(e + 1) % poly.size()];
                const Vec2& a = pts[ia];
                const Vec2& b = pts[ib];
                if (ia == v_idx || ib == v_idx) continue;
                if (same_point(a, M) || same_point(b, M)) continue;
                int o1 = orient(M, v, a), o2 = orient(M, v, b);
                int o3 = orient(a, b, M), o4 = orient(a, b, v);
                if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
                    return false;
            }
            // a vertex sitting exactly on the bridge also blocks it
            for (size_t q = 0; q < poly.size(); ++q) {
                if (poly[q] == v_idx) continue;
                const Vec2& r = pts[poly[q]];
                if (same_point(r, M) || same_point(r, v)) continue;
                if (orient(M, v, r) == 0 && on_segment(M, v, r)) return false;
            }
            return true;
        };
        double best2 = std::numeric_limits<double>::max();
        size_t found = SIZE_MAX;
        for (size_t i = 0; i < poly.size(); ++i) {
            const Vec2& v = pts[poly[i]];
            if (uses[poly[i]] >= 2) continue;
            if (same_point(v, M) || v.x <= M.x + kEps) continue;
            Vec2 d = v - M;
            double metric = std::fabs(d.y) / std::max(d.x, kEps) * 1e6 + d.x * d.x + d.y * d.y;
            if (metric >= best2) continue;
            if (!segment_clear(v, poly[i])) continue;
            best2 = metric;
            found = i;
        }
        if (found != SIZE_MAX) chosen = found;
    }

    // splice: ... chosen, M, hole forward ..., M, chosen, ...
    std::vector<int> merged;
    merged.reserve(poly.size() + hole.size() + 2);
    for (size_t i = 0; i <= chosen; ++i) merged.push_back(poly[i]);
    for (size_t k = 0; k <= hole.size(); ++k) merged.push_back(hole[(mi + k) % hole.size()]);
    merged.push_back(poly[chosen]);
    for (size_t i = chosen + 1; i < poly.size(); ++i) merged.push_back(poly[i]);
    poly = std::move(merged);
}

} // namespace

std::vector<std::array<int, 3>> triangulate_rings(const std::vector<Vec2>& pts,
                                                  const std::vector<int>& outer_ring,
                                                  const std::vector<std::vector<int>>& hole_rings) {
    std::vector<int> poly = outer_ring;

    // merge holes right-to-left
    std::vector<size_t> order(hole_rings.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto max_x = [&](const std::vector<int>& ring) {
        double mx = std::numeric_limits<double>::lowest();
        for (int idx : ring) mx = std::max(mx, pts[idx].x);
        return mx;
    };
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        double xa = max_x(hole_rings[a]);
        double xb = max_x(hole_rings[b]);
        if (xa != xb) return xa > xb;
        return a < b;
    });
    for (size_t h : order) splice_hole(poly, pts, hole_rings[h]);

    // ear clipping over a doubly linked list of positions
    const size_t n = poly.size();
    std::vector<size_t> prev(n), next(n);
    for (size_t i = 0; i < n; ++i) {
        prev[i] = (i + n - 1) % n;
        next[i] = (i + 1) % n;
    }
    std::vector<bool> alive(n, true);
    size_t remaining = n;

    auto is_convex = [&](size_t p) {
        return orient(pts[poly[prev[p]]], pts[poly[p]], pts[poly[next[p]]]) > 0;
    };
    auto is_ear = [&](size_t p) {
        if (!is_convex(p)) return false;
        const Vec2& a = pts[poly[prev[p]]];
        const Vec2& b = pts[poly[p]];
        const Vec2& c = pts[poly[next[p]]];
        for (size_t q = next[next[p]]; q != prev[p]; q = next[q]) {
            const Vec2& r = pts[poly[q]];
            if (same_point(r, a) || same_point(r, b) || same_point(r, c)) continue;
            if (point_in_triangle_strict(r, a, b, c)) return false;
        }
        return true;
    };

    std::vector<std::array<int, 3>> tris;
    tris.reserve(n >= 2 ? n - 2 : 0);
    size_t cur = 0;
    size_t since_clip = 0;
    while (remaining > 3) {
        if (!alive[cur]) { cur = next[cur]; continue; }
        if (is_ear(cur)) {
            tris.push_back({poly[prev[cur]], poly[cur], poly[next[cur]]});
            alive[cur] = false;
            next[prev[cur]] = next[cur];
            prev[next[cur]] = prev[cur];
            cur = prev[cur];
            --remaining;
            since_clip = 0;
            continue;
        }
        cur = next[cur];
        if (++since_clip > remaining + 1) {
            // numeric fallback: clip the convex corner of smallest area
            size_t best = SIZE_MAX;
            double best_area = std::numeric_limits<double>::max();
            size_t p = cur;
            for (size_t step = 0; step < remaining; ++step, p = next[p]) {
                if (!is_convex(p)) continue;
                double area = std::fabs(cross2(pts[poly[p]] - pts[poly[prev[p]]],
                                               pts[poly[next[p]]] - pts[poly[p]]));
                if (area < best_area) { best_area = area; best = p; }
            }
            if (best == SIZE_MAX) {
                throw GeomError(GeomErrorCode::SelfIntersectingProfile,
                                "profile cannot be triangulated");
            }
            tris.push_back({poly[prev[best]], poly[best], poly[next[best]]});
            alive[best] = false;
            next[prev[best]] = next[best];
            prev[next[best]] = prev[best];
            cur = prev[best];
            --remaining;
            since_clip = 0;
        }
    }
    // last triangle
    size_t p = cur;
    while (!alive[p]) p = next[p];
    tris.push_back({poly[prev[p]], poly[p], poly[next[p]]});
    return tris;
}

std::vector<Vec2> ellipse_polygon(const Vec2& center, double semi_x, double semi_y,
                                  int segments) {
    std::vector<Vec2> out;
    out.reserve(segments);
    // half-step phase keeps vertices off the center axes, so hex-packed
    // rows of identical holes never align a ray exactly with a vertex
    for (int k = 0; k < segments; ++k) {
        double a = 2.0 * std::numbers::pi * (k + 0.5) / segments;
        out.push_back({center.x + semi_x * std::cos(a), center.y + semi_y * std::sin(a)});
    }
    return out;
}

Mesh extrude_profile(const std::vector<Vec2>& outer,
                     const std::vector<std::vector<Vec2>>& holes, double h,
                     const std::vector<double>& hole_top_scale) {
    if (outer.size() < 3 || h <= 0.0) {
        throw GeomError(GeomErrorCode::SelfIntersectingProfile, "degenerate extrusion profile");
    }

    std::vector<Vec2> outer_ccw = outer;
    if (polygon_area(outer_ccw) < 0) std::reverse(outer_ccw.begin(), outer_ccw.end());
    if (polygon_self_intersects(outer_ccw)) {
        throw GeomError(GeomErrorCode::SelfIntersectingProfile, "outer profile self-intersects");
    }

    std::vector<std::vector<Vec2>> holes_cw;
    holes_cw.reserve(holes.size());
    for (const auto& hole : holes) {
        std::vector<Vec2> hw = hole;
        if (hw.size() < 3) {
            throw GeomError(GeomErrorCode::SelfIntersectingProfile, "degenerate hole");
        }
        if (polygon_area(hw) > 0) std::reverse(hw.begin(), hw.end());
        if (polygon_self_intersects(hw)) {
            throw GeomError(GeomErrorCode::SelfIntersectingProfile, "hole self-intersects");
        }
        holes_cw.push_back(std::move(hw));
    }

    auto check_layout = [&](const std::vector<std::vector<Vec2>>& hs) {
        for (const auto& hole : hs) {
            for (const auto& v : hole) {
                if (!point_in_polygon(v, outer_ccw)) {
                    throw GeomError(GeomErrorCode::HoleOutsideOuter,
                                    "hole vertex outside the outer profile");
                }
            }
            for (size_t i = 0; i < hole.size(); ++i) {
                const Vec2& a = hole[i];
                const Vec2& b = hole[(i + 1) % hole.size()];
                for (size_t j = 0; j < outer_ccw.size(); ++j) {
                    if (segments_intersect(a, b, outer_ccw[j],
                                           outer_ccw[(j + 1) % outer_ccw.size()])) {
                        throw GeomError(GeomErrorCode::HoleOutsideOuter,
                                        "hole crosses the outer profile");
                    }
                }
            }
        }
        for (size_t i = 0; i < hs.size(); ++i) {
            for (size_t j = i + 1; j < hs.size(); ++j) {
                if (polygons_touch(hs[i], hs[j])) {
                    throw GeomError(GeomErrorCode::HoleOverlap, "holes overlap");
                }
            }
        }
    };
    check_layout(holes_cw);

    // top profile (holes possibly scaled about their centroids)
    std::vector<std::vector<Vec2>> holes_top = holes_cw;
    bool tapered = false;
    for (size_t i = 0; i < holes_top.size(); ++i) {
        double s = i < hole_top_scale.size() ? hole_top_scale[i] : 1.0;
        if (s == 1.0) continue;
        tapered = true;
        Vec2 c{0, 0};
        for (const auto& v : holes_top[i]) c = c + v;
        c = c * (1.0 / holes_top[i].size());
        for (auto& v : holes_top[i]) v = c + (v - c) * s;
    }
    if (tapered) check_layout(holes_top);

    // vertex layout: bottom rings then top rings
    std::vector<Vec2> bottom_pts = outer_ccw;
    std::vector<int> outer_ring(outer_ccw.size());
    for (size_t i = 0; i < outer_ccw.size(); ++i) outer_ring[i] = static_cast<int>(i);
    std::vector<std::vector<int>> hole_rings;
    for (const auto& hole : holes_cw) {
        std::vector<int> ring;
        ring.reserve(hole.size());
        for (const auto& v : hole) {
            ring.push_back(static_cast<int>(bottom_pts.size()));
            bottom_pts.push_back(v);
        }
        hole_rings.push_back(std::move(ring));
    }
    std::vector<Vec2> top_pts = outer_ccw;
    for (const auto& hole : holes_top) {
        top_pts.insert(top_pts.end(), hole.begin(), hole.end());
    }

    const int ring_total = static_cast<int>(bottom_pts.size());
    Mesh m;
    m.vertices.reserve(2 * ring_total);
    for (const auto& p : bottom_pts) m.vertices.push_back({p.x, p.y, 0.0});
    for (const auto& p : top_pts) m.vertices.push_back({p.x, p.y, h});

    auto bottom_tris = triangulate_rings(bottom_pts, outer_ring, hole_rings);
    for (const auto& t : bottom_tris) {
        m.faces.push_back({static_cast<uint32_t>(t[0]), static_cast<uint32_t>(t[2]),
                           static_cast<uint32_t>(t[1])});
    }
    auto top_tris = tapered ? triangulate_rings(top_pts, outer_ring, hole_rings) : bottom_tris;
    for (const auto& t : top_tris) {
        m.faces.push_back({static_cast<uint32_t>(t[0] + ring_total),
                           static_cast<uint32_t>(t[1] + ring_total),
                           static_cast<uint32_t>(t[2] + ring_total)});
    }

    auto add_walls = [&](const std::vector<int>& ring) {
        for (size_t k = 0; k < ring.size(); ++k) {
            uint32_t i = static_cast<uint32_t>(ring[k]);
            uint32_t j = static_cast<uint32_t>(ring[(k + 1) % ring.size()]);
            m.faces.push_back({i, j, j + ring_total, i + ring_total});
        }
    };
    add_walls(outer_ring);
    for (const auto& ring : hole_rings) add_walls(ring);
    return m;
}

} // namespace bioforge::geom
