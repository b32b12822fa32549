#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "bioforge/geom/compile.hpp"
#include "bioforge/geom/errors.hpp"
#include "bioforge/geom/extrude.hpp"
#include "bioforge/geom/generators.hpp"
#include "bioforge/geom/metrics.hpp"
#include "bioforge/geom/subdivide.hpp"
#include "bioforge/geom/voronoi.hpp"
#include "test_support.hpp"

using namespace bioforge;
using namespace bioforge::geom;
using testsup::count_mesh;
using testsup::edge_multiset_closed;
using testsup::signed_volume;

TEST_CASE("box mesh basics") {
    Mesh cube = make_box({{0, 0, 0}, {1, 1, 1}});
    CHECK(edge_multiset_closed(cube));
    MeshMetrics m = mesh_metrics(cube);
    CHECK(m.volume == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.porosity_vs_bbox == doctest::Approx(0.0));
    CHECK(m.component_hint == 1);
    CHECK_FALSE(m.negative_volume);
}

TEST_CASE("flipped cube reports negative volume") {
    Mesh cube = make_box({{0, 0, 0}, {1, 1, 1}});
    for (auto& f : cube.faces) std::reverse(f.begin(), f.end());
    MeshMetrics m = mesh_metrics(cube);
    CHECK(m.volume == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(m.negative_volume);
}

TEST_CASE("catmull-clark level 0 is identity") {
    Mesh cube = make_box({{0, 0, 0}, {2, 2, 2}});
    Mesh out = catmull_clark(cube, 0);
    CHECK(out.vertices == cube.vertices);
    CHECK(out.faces == cube.faces);
}

TEST_CASE("catmull-clark cube combinatorics") {
    Mesh cube = make_box({{0, 0, 0}, {1, 1, 1}});
    Mesh l1 = catmull_clark(cube, 1);
    auto c1 = count_mesh(l1);
    CHECK(c1.vertices == 26);
    CHECK(c1.edges == 48);
    CHECK(c1.faces == 24);
    CHECK(static_cast<long long>(c1.vertices) - static_cast<long long>(c1.edges) +
              static_cast<long long>(c1.faces) ==
          2);
    for (const auto& f : l1.faces) CHECK(f.size() == 4);
    CHECK(edge_multiset_closed(l1));

    // V' = V+E+F, E' = 2E + sum(n), F' = sum(n), applied twice
    auto c0 = count_mesh(cube);
    size_t v2 = c1.vertices + c1.edges + c1.faces;
    size_t e2 = 2 * c1.edges + c1.corner_sum;
    size_t f2 = c1.corner_sum;
    Mesh l2 = catmull_clark(cube, 2);
    auto c2 = count_mesh(l2);
    CHECK(c2.vertices == v2);
    CHECK(c2.edges == e2);
    CHECK(c2.faces == f2);
    CHECK(c0.vertices + c0.edges + c0.faces == c1.vertices);
}

TEST_CASE("catmull-clark rejects open meshes") {
    Mesh open_quad;
    open_quad.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    open_quad.faces = {{0, 1, 2, 3}};
    CHECK_THROWS_AS(catmull_clark(open_quad, 1), GeomError);
}

TEST_CASE("catmull-clark keeps kernel meshes closed") {
    Rng rng(11);
    HelicalParams hp;
    hp.plies = 2;
    hp.fibers_per_ply = 3;
    auto plies = build_helical(hp, rng);
    for (const auto& ply : plies) {
        Mesh smooth = catmull_clark(ply, 1);
        CHECK(edge_multiset_closed(smooth));
        for (const auto& f : smooth.faces) CHECK(f.size() == 4);
    }
}

TEST_CASE("voronoi single seed fills the domain") {
    Box3 domain{{0, 0, 0}, {4, 3, 2}};
    auto cells = voronoi_partition({{1, 1, 1}}, domain);
    REQUIRE(cells.size() == 1);
    CHECK(signed_volume(cells[0].to_mesh()) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("voronoi mirror seeds split volume evenly") {
    Box3 domain{{-1, 0, 0}, {1, 1, 1}};
    auto cells = voronoi_partition({{-0.4, 0.5, 0.5}, {0.4, 0.5, 0.5}}, domain);
    REQUIRE(cells.size() == 2);
    double v0 = signed_volume(cells[0].to_mesh());
    double v1 = signed_volume(cells[1].to_mesh());
    CHECK(v0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v1 == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& v : cells[0].verts) CHECK(v.x <= 1e-12);
}

TEST_CASE("voronoi duplicate seeds rejected") {
    Box3 domain{{0, 0, 0}, {1, 1, 1}};
    CHECK_THROWS_AS(voronoi_partition({{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}}, domain), GeomError);
}

TEST_CASE("voronoi cells match the nearest-seed oracle and partition volume") {
    Box3 domain{{0, 0, 0}, {10, 10, 10}};
    Rng rng(20240);
    std::vector<Vec3> seeds;
    for (int i = 0; i < 20; ++i) {
        seeds.push_back({rng.uniform(0.2, 9.8), rng.uniform(0.2, 9.8), rng.uniform(0.2, 9.8)});
    }
    auto cells = voronoi_partition(seeds, domain);
    REQUIRE(cells.size() == seeds.size());

    double total = 0.0;
    for (const auto& c : cells) {
        Mesh m = c.to_mesh();
        CHECK(edge_multiset_closed(m));
        total += signed_volume(m);
    }
    CHECK(total == doctest::Approx(1000.0).epsilon(1e-6));

    // membership: containing cell == nearest seed (ties excluded)
    auto inside = [](const ConvexPoly& cell, const Vec3& p) {
        for (const auto& f : cell.faces) {
            Vec3 n{0, 0, 0};
            for (size_t k = 0; k < f.size(); ++k) {
                n += cross(cell.verts[f[k]], cell.verts[f[(k + 1) % f.size()]]);
            }
            if (dot(n, p - cell.verts[f[0]]) > 1e-9 * n.length()) return false;
        }
        return true;
    };
    int checked = 0, agree = 0;
    for (int s = 0; s < 10000; ++s) {
        Vec3 p{rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)};
        double best = 1e300, second = 1e300;
        size_t best_i = 0;
        for (size_t i = 0; i < seeds.size(); ++i) {
            double d = (seeds[i] - p).length_sq();
            if (d < best) { second = best; best = d; best_i = i; }
            else if (d < second) { second = d; }
        }
        if (std::sqrt(second) - std::sqrt(best) < 1e-9) continue; // boundary tie
        ++checked;
        if (inside(cells[best_i], p)) ++agree;
    }
    CHECK(checked > 9000);
    CHECK(static_cast<double>(agree) / checked >= 0.999);
}

TEST_CASE("voronoi serial and parallel agree bitwise") {
    Box3 domain{{0, 0, 0}, {5, 5, 5}};
    Rng rng(7);
    std::vector<Vec3> seeds;
    for (int i = 0; i < 40; ++i) {
        seeds.push_back({rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5)});
    }
    auto a = voronoi_partition(seeds, domain, Exec::serial);
    auto b = voronoi_partition(seeds, domain, Exec::parallel);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].verts == b[i].verts);
        CHECK(a[i].faces == b[i].faces);
    }
}

TEST_CASE("extrude solid square") {
    std::vector<Vec2> square = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    Mesh m = extrude_profile(square, {}, 1.0);
    CHECK(edge_multiset_closed(m));
    CHECK(signed_volume(m) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("extrude square with centered square hole") {
    std::vector<Vec2> outer = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    std::vector<Vec2> hole = {{1.5, 1.5}, {2.5, 1.5}, {2.5, 2.5}, {1.5, 2.5}};
    Mesh m = extrude_profile(outer, {hole}, 2.0);
    CHECK(edge_multiset_closed(m));
    CHECK(signed_volume(m) == doctest::Approx((16.0 - 1.0) * 2.0).epsilon(1e-9));
}

TEST_CASE("extrude validates hole layout") {
    std::vector<Vec2> outer = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    auto near_edge = ellipse_polygon({5.0, 2.0}, 0.5, 0.5, 16);
    CHECK_THROWS_AS(extrude_profile(outer, {near_edge}, 1.0), GeomError);
    auto a = ellipse_polygon({2.0, 2.0}, 0.6, 0.6, 16);
    auto b = ellipse_polygon({2.5, 2.0}, 0.6, 0.6, 16);
    CHECK_THROWS_AS(extrude_profile(outer, {a, b}, 1.0), GeomError);
}

TEST_CASE("extrude random hole layouts stay watertight") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec2> outer = {{0, 0}, {20, 0}, {20, 12}, {0, 12}};
        std::vector<std::vector<Vec2>> holes;
        std::vector<Vec2> centers;
        int want = 1 + static_cast<int>(rng.next_below(6));
        for (int h = 0; h < want; ++h) {
            for (int attempt = 0; attempt < 40; ++attempt) {
                Vec2 c{rng.uniform(2, 18), rng.uniform(2, 10)};
                double r = rng.uniform(0.3, 1.0);
                bool clear = true;
                for (const auto& other : centers) {
                    double dx = c.x - other.x, dy = c.y - other.y;
                    if (std::sqrt(dx * dx + dy * dy) < 2.4) clear = false;
                }
                if (!clear) continue;
                int segs = 8 + static_cast<int>(rng.next_below(3)) * 4;
                holes.push_back(ellipse_polygon(c, r, r * rng.uniform(0.5, 1.0), segs));
                centers.push_back(c);
                break;
            }
        }
        Mesh m = extrude_profile(outer, holes, rng.uniform(0.5, 4.0));
        CHECK(edge_multiset_closed(m));
        double hole_area = 0.0;
        for (const auto& h : holes) hole_area += std::fabs(polygon_area(h));
        double height = m.bounds().extent().z;
        CHECK(signed_volume(m) ==
              doctest::Approx((240.0 - hole_area) * height).epsilon(1e-9));
    }
}

TEST_CASE("helical angles follow the zero-noise law") {
    HelicalParams p;
    p.plies = 3;
    p.rotation_deg = 30.0;
    p.noise_deg = 0.0;
    Rng rng(5);
    auto angles = helical_ply_angles(p, rng);
    REQUIRE(angles.size() == 3);
    CHECK(angles[0] == 0.0);
    CHECK(angles[1] == 30.0);
    CHECK(angles[2] == 60.0);
}

TEST_CASE("helical noise stream is reproducible bitwise") {
    HelicalParams p;
    p.plies = 8;
    p.noise_deg = 5.0;
    Rng r1(42), r2(42);
    auto a = helical_ply_angles(p, r1);
    auto b = helical_ply_angles(p, r2);
    CHECK(a == b);
    bool any_noise = false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != static_cast<double>(i) * p.rotation_deg) any_noise = true;
    }
    CHECK(any_noise);
}

TEST_CASE("helical stack height and mesh count") {
    HelicalParams p;
    p.plies = 8;
    p.ply_thickness = 0.5;
    Rng rng(0);
    auto plies = build_helical(p, rng);
    REQUIRE(plies.size() == 8);
    Box3 bbox;
    for (const auto& m : plies) {
        bbox.expand(m.bounds());
        CHECK(edge_multiset_closed(m));
    }
    CHECK(bbox.lo.z == doctest::Approx(0.0));
    CHECK(bbox.hi.z == doctest::Approx(4.0));
}

TEST_CASE("cellular single region is the whole domain") {
    CellularParams p;
    p.region_count = 1;
    p.wall_gap = 0.0;
    p.smooth_levels = 0;
    p.randomness = 0.0;
    Rng rng(1);
    auto r = build_cellular(p, rng);
    REQUIRE(r.meshes.size() == 1);
    CHECK(signed_volume(r.meshes[0]) == doctest::Approx(1000.0).epsilon(1e-9));
}

TEST_CASE("cellular zero randomness on a 2x2x2 lattice gives congruent cells") {
    CellularParams p;
    p.region_count = 8;
    p.randomness = 0.0;
    p.wall_gap = 0.0;
    p.smooth_levels = 0;
    Rng rng(3);
    auto r = build_cellular(p, rng);
    REQUIRE(r.meshes.size() == 8);
    for (const auto& m : r.meshes) {
        CHECK(signed_volume(m) == doctest::Approx(125.0).epsilon(1e-9));
    }
}

TEST_CASE("cellular with sandwich appends two face sheets") {
    CellularParams p;
    p.region_count = 8;
    p.randomness = 0.3;
    p.sandwich_thickness = 0.8;
    p.smooth_levels = 1;
    Rng rng(9);
    auto r = build_cellular(p, rng);
    CHECK(r.meshes.size() == 8 + 2 - r.dropped_cells);
    for (const auto& m : r.meshes) CHECK(edge_multiset_closed(m));
    Box3 bbox;
    for (const auto& m : r.meshes) bbox.expand(m.bounds());
    CHECK(bbox.lo.z == doctest::Approx(-0.8));
    CHECK(bbox.hi.z == doctest::Approx(10.8));
}

TEST_CASE("tubular solid slab when no tubules") {
    TubularParams p;
    p.tubule_count = 0;
    p.cortical_thickness = 0.0;
    Rng rng(0);
    auto r = build_tubular(p, rng);
    REQUIRE(r.meshes.size() == 1);
    CHECK(signed_volume(r.meshes[0]) == doctest::Approx(400.0).epsilon(1e-12));
}

TEST_CASE("tubular analytic volume with four 64-gon tubules") {
    TubularParams p;
    p.tubule_count = 4;
    p.tubule_radius = 1.0;
    p.ellipticity = 1.0;
    p.spacing = 2.5;
    p.segments = 64;
    Rng rng(0);
    auto r = build_tubular(p, rng);
    double total = 0.0;
    for (const auto& m : r.meshes) {
        CHECK(edge_multiset_closed(m));
        total += signed_volume(m);
    }
    // polygon-area oracle: A = n/2 r^2 sin(2 pi / n)
    double hole_area = 0.5 * 64.0 * std::sin(2.0 * std::numbers::pi / 64.0);
    double expect = 400.0 - 4.0 * 4.0 * hole_area;
    CHECK(expect == doctest::Approx(349.815).epsilon(1e-3));
    CHECK(total == doctest::Approx(expect).epsilon(0.005));

    Scene scene;
    scene.meshes = r.meshes;
    auto d = describe_scene(scene);
    CHECK(d.porosity == doctest::Approx(1.0 - expect / 400.0).epsilon(0.005));
}

TEST_CASE("tubular gradient scales hole radii by the linear law") {
    TubularParams p;
    p.tubule_count = 4;
    p.tubule_radius = 0.5;
    p.spacing = 2.6; // must clear 2 * r * f
    p.slab_x = 14;
    p.slab_y = 14;
    p.gradient = GradientSpec{2, 2.0};
    Rng rng(0);
    auto r = build_tubular(p, rng);
    REQUIRE(!r.meshes.empty());
    const Mesh& matrix = r.meshes[0];
    const double h = 4.0;
    const Box3 bbox = matrix.bounds();

    // hole ring vertices are the interior ones (not on the outer rectangle);
    // they appear in rings of p.segments, bottom ring matched with top ring
    std::vector<Vec3> bottom, top;
    for (const auto& v : matrix.vertices) {
        bool on_outer = std::fabs(v.x - bbox.lo.x) < 1e-9 || std::fabs(v.x - bbox.hi.x) < 1e-9 ||
                        std::fabs(v.y - bbox.lo.y) < 1e-9 || std::fabs(v.y - bbox.hi.y) < 1e-9;
        if (on_outer) continue;
        if (v.z == 0.0) bottom.push_back(v);
        if (v.z == h) top.push_back(v);
    }
    const size_t per_hole = 64;
    REQUIRE(bottom.size() == top.size());
    REQUIRE(bottom.size() == 4 * per_hole);

    auto ring_radius = [&](const std::vector<Vec3>& ring, size_t hole) {
        Vec3 centroid{0, 0, 0};
        for (size_t i = 0; i < per_hole; ++i) centroid += ring[hole * per_hole + i];
        centroid = centroid / static_cast<double>(per_hole);
        double rsum = 0.0;
        for (size_t i = 0; i < per_hole; ++i) {
            Vec3 d = ring[hole * per_hole + i] - centroid;
            rsum += std::sqrt(d.x * d.x + d.y * d.y);
        }
        return rsum / per_hole;
    };
    for (size_t hole = 0; hole < 4; ++hole) {
        // top/bottom radius ratio is factor^2 (endpoints 1/f and f)
        CHECK(ring_radius(top, hole) / ring_radius(bottom, hole) ==
              doctest::Approx(4.0).epsilon(1e-9));
    }
}

TEST_CASE("tubular overlap and capacity errors") {
    TubularParams p;
    p.tubule_count = 4;
    p.tubule_radius = 1.0;
    p.spacing = 1.8; // < 2 * r
    Rng rng(0);
    CHECK_THROWS_AS(build_tubular(p, rng), GeomError);
    try {
        build_tubular(p, rng);
    } catch (const GeomError& e) {
        CHECK(e.code() == GeomErrorCode::TubuleOverlap);
    }

    TubularParams q;
    q.tubule_count = 400;
    q.slab_x = 10;
    q.slab_y = 10;
    try {
        build_tubular(q, rng);
        CHECK(false);
    } catch (const GeomError& e) {
        CHECK(e.code() == GeomErrorCode::TubuleOutsideCortex);
    }
}

TEST_CASE("gradient factor one is the identity") {
    TubularParams a;
    a.tubule_count = 6;
    Rng r1(0), r2(0);
    auto plain = build_tubular(a, r1);
    TubularParams b = a;
    b.gradient = GradientSpec{2, 1.0};
    auto graded = build_tubular(b, r2);
    REQUIRE(plain.meshes.size() == graded.meshes.size());
    for (size_t i = 0; i < plain.meshes.size(); ++i) {
        CHECK(plain.meshes[i].vertices == graded.meshes[i].vertices);
    }
}

TEST_CASE("primitive shapes are closed and grids produce instances") {
    PrimitiveParams p;
    p.shape = PrimitiveParams::Shape::sphere;
    p.segments = 16;
    auto spheres = build_primitive(p);
    REQUIRE(spheres.size() == 1);
    CHECK(edge_multiset_closed(spheres[0]));
    double expect_r = 1.0;
    CHECK(signed_volume(spheres[0]) <
          4.0 / 3.0 * std::numbers::pi * expect_r * expect_r * expect_r);

    PrimitiveParams g;
    g.grid_x = 3;
    g.grid_y = 3;
    g.rotate_z_deg = 5.0;
    auto grid = build_primitive(g);
    CHECK(grid.size() == 9);
    for (const auto& m : grid) CHECK(edge_multiset_closed(m));

    PrimitiveParams c;
    c.shape = PrimitiveParams::Shape::cylinder;
    c.hole_radius = 0.5;
    auto tube = build_primitive(c);
    REQUIRE(tube.size() == 1);
    CHECK(edge_multiset_closed(tube[0]));

    PrimitiveParams k;
    k.shape = PrimitiveParams::Shape::cone;
    auto cones = build_primitive(k);
    CHECK(edge_multiset_closed(cones[0]));
}

TEST_CASE("compile produces labeled meshes and is deterministic") {
    dsl::DesignProgram prog;
    prog.name = "t";
    prog.seed = 12;
    dsl::Block hel;
    hel.kind = dsl::BlockKind::helical;
    hel.set("plies", 8.0);
    prog.blocks.push_back(hel);

    auto r1 = compile_program(prog, Exec::serial);
    REQUIRE(ok(r1));
    const Scene& s1 = scene(r1);
    CHECK(s1.meshes.size() == 8);
    for (const auto& m : s1.meshes) CHECK(m.label == "helical");

    auto r2 = compile_program(prog, Exec::parallel);
    REQUIRE(ok(r2));
    const Scene& s2 = scene(r2);
    REQUIRE(s1.meshes.size() == s2.meshes.size());
    for (size_t i = 0; i < s1.meshes.size(); ++i) {
        CHECK(s1.meshes[i].vertices == s2.meshes[i].vertices);
        CHECK(s1.meshes[i].faces == s2.meshes[i].faces);
    }

    auto r3 = compile_program(prog, Exec::serial);
    REQUIRE(ok(r3));
    for (size_t i = 0; i < s1.meshes.size(); ++i) {
        CHECK(s1.meshes[i].vertices == scene(r3).meshes[i].vertices);
    }
}

TEST_CASE("compile reports tubule overlap with a suggestion") {
    dsl::DesignProgram prog;
    prog.name = "t";
    dsl::Block tub;
    tub.kind = dsl::BlockKind::tubular;
    tub.set("tubule_radius", 1.0);
    tub.set("spacing", 1.8);
    prog.blocks.push_back(tub);
    auto r = compile_program(prog);
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).code == GeomErrorCode::TubuleOverlap);
    CHECK(error(r).param == "spacing");
    CHECK(error(r).has_suggestion);
    CHECK(error(r).block_index == 0);
}

TEST_CASE("multi-block compile keeps block mesh ranges") {
    dsl::DesignProgram prog;
    prog.name = "combo";
    prog.seed = 4;
    dsl::Block hel;
    hel.kind = dsl::BlockKind::helical;
    hel.set("plies", 3.0);
    dsl::Block slab;
    slab.kind = dsl::BlockKind::slab;
    prog.blocks.push_back(hel);
    prog.blocks.push_back(slab);
    auto r = compile_program(prog);
    REQUIRE(ok(r));
    const Scene& s = scene(r);
    REQUIRE(s.blocks.size() == 2);
    CHECK(s.blocks[0].mesh_count == 3);
    CHECK(s.blocks[1].mesh_begin == 3);
    CHECK(s.blocks[1].mesh_count == 1);
    CHECK(s.multi_component_intended);
}
