#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <map>
#include <set>

#include "bioforge/geom/compile.hpp"
#include "bioforge/geom/generators.hpp"
#include "bioforge/validate/mesh_io.hpp"
#include "bioforge/validate/render.hpp"
#include "bioforge/validate/validate.hpp"
#include "test_support.hpp"

using namespace bioforge;
using namespace bioforge::geom;
using namespace bioforge::validate;
using testsup::edge_multiset_closed;

namespace {

Scene one_cube() {
    Scene s;
    s.meshes.push_back(make_box({{0, 0, 0}, {1, 1, 1}}));
    return s;
}

// independent BFS over face adjacency, per mesh then merged
size_t bfs_component_count(const Scene& scene) {
    size_t total = 0, base = 0, comps = 0;
    for (const auto& m : scene.meshes) total += m.vertices.size();
    std::vector<std::vector<uint32_t>> adj(total);
    for (const auto& m : scene.meshes) {
        for (const auto& f : m.faces) {
            for (size_t i = 0; i < f.size(); ++i) {
                uint32_t a = static_cast<uint32_t>(base + f[i]);
                uint32_t b = static_cast<uint32_t>(base + f[(i + 1) % f.size()]);
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        }
        base += m.vertices.size();
    }
    std::vector<bool> seen(total, false);
    for (uint32_t v = 0; v < total; ++v) {
        if (seen[v] || adj[v].empty()) continue;
        ++comps;
        std::vector<uint32_t> stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            uint32_t x = stack.back();
            stack.pop_back();
            for (uint32_t y : adj[x]) {
                if (!seen[y]) { seen[y] = true; stack.push_back(y); }
            }
        }
    }
    return comps;
}

// Independent pair oracle: a non-coplanar triangle pair properly intersects
// iff an edge of one pierces the interior of the other. Brute force over all
// pairs, mirroring the validator's skip rules (different meshes only here).
bool edge_pierces(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 n = cross(b - a, c - a);
    double dp = dot(n, p - a), dq = dot(n, q - a);
    if (dp * dq >= -1e-12) return false; // edge does not strictly cross plane
    double t = dp / (dp - dq);
    Vec3 x = p + (q - p) * t;
    // strict interior via same-side tests
    double s1 = dot(cross(b - a, x - a), n);
    double s2 = dot(cross(c - b, x - b), n);
    double s3 = dot(cross(a - c, x - c), n);
    return s1 > 1e-12 && s2 > 1e-12 && s3 > 1e-12;
}

uint64_t brute_force_cross_mesh_pairs(const Scene& scene) {
    struct T { Vec3 a, b, c; uint32_t mesh; };
    std::vector<T> tris;
    for (uint32_t mi = 0; mi < scene.meshes.size(); ++mi) {
        const auto& m = scene.meshes[mi];
        for (const auto& t : m.triangles()) {
            tris.push_back({m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]], mi});
        }
    }
    uint64_t count = 0;
    for (size_t i = 0; i < tris.size(); ++i) {
        for (size_t j = i + 1; j < tris.size(); ++j) {
            if (tris[i].mesh == tris[j].mesh) continue;
            const T& u = tris[i];
            const T& v = tris[j];
            bool hit = edge_pierces(u.a, u.b, v.a, v.b, v.c) ||
                       edge_pierces(u.b, u.c, v.a, v.b, v.c) ||
                       edge_pierces(u.c, u.a, v.a, v.b, v.c) ||
                       edge_pierces(v.a, v.b, u.a, u.b, u.c) ||
                       edge_pierces(v.b, v.c, u.a, u.b, u.c) ||
                       edge_pierces(v.c, v.a, u.a, u.b, u.c);
            if (hit) ++count;
        }
    }
    return count;
}

} // namespace

TEST_CASE("single cube validates clean") {
    Scene s = one_cube();
    ValidationReport r = validate_scene(s);
    CHECK(r.executed);
    CHECK(r.mesh_count == 1);
    CHECK(r.all_watertight());
    CHECK(r.component_count == 1);
    CHECK(r.floating_components.empty());
    CHECK(r.self_intersection_pairs == 0);
}

TEST_CASE("watertight check matches the edge-multiset oracle on kernel meshes") {
    Rng rng(77);
    std::vector<Mesh> meshes;
    HelicalParams hp;
    hp.plies = 2;
    for (auto& m : build_helical(hp, rng)) meshes.push_back(m);
    CellularParams cp;
    cp.region_count = 6;
    for (auto& m : build_cellular(cp, rng).meshes) meshes.push_back(m);
    TubularParams tp;
    tp.tubule_count = 5;
    for (auto& m : build_tubular(tp, rng).meshes) meshes.push_back(m);
    for (const auto& m : meshes) {
        CHECK(mesh_watertight(m) == edge_multiset_closed(m));
        CHECK(mesh_watertight(m));
    }
    // broken: drop one face
    Mesh damaged = make_box({{0, 0, 0}, {1, 1, 1}});
    damaged.faces.pop_back();
    CHECK_FALSE(mesh_watertight(damaged));
    CHECK(mesh_watertight(damaged) == edge_multiset_closed(damaged));
}

TEST_CASE("two separated cubes are two floating components") {
    Scene s;
    s.meshes.push_back(make_box({{0, 0, 0}, {1, 1, 1}}));
    s.meshes.push_back(make_box({{6, 0, 0}, {7, 1, 1}}));
    ValidationReport r = validate_scene(s);
    CHECK(r.component_count == 2);
    REQUIRE(r.floating_components.size() == 2);
    CHECK(r.self_intersection_pairs == 0);
}

TEST_CASE("touching cubes are not floating") {
    Scene s;
    s.meshes.push_back(make_box({{0, 0, 0}, {1, 1, 1}}));
    s.meshes.push_back(make_box({{1.02, 0, 0}, {2, 1, 1}})); // 0.02 < tolerance
    ValidationReport r = validate_scene(s);
    CHECK(r.component_count == 2);
    CHECK(r.floating_components.empty());
}

TEST_CASE("overlapping cubes report intersections matching the brute-force oracle") {
    Scene s;
    s.meshes.push_back(make_box({{0, 0, 0}, {1, 1, 1}}));
    s.meshes.push_back(make_box({{0.5, 0.5, 0.5}, {1.5, 1.5, 1.5}}));
    ValidationReport r = validate_scene(s);
    CHECK(r.self_intersection_pairs > 0);
    ValidationReport serial = validate_scene(s, Exec::serial);
    CHECK(serial.self_intersection_pairs == r.self_intersection_pairs);

    // generic offsets avoid pierce points landing exactly on triangulation
    // diagonals, where the edge-pierce oracle is blind by construction
    Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        Scene t;
        t.meshes.push_back(make_box({{0, 0, 0}, {1, 1, 1}}));
        double ox = rng.uniform(0.15, 0.85);
        double oy = rng.uniform(0.15, 0.85);
        double oz = rng.uniform(0.15, 0.85);
        t.meshes.push_back(make_box({{ox, oy, oz}, {ox + 1, oy + 1, oz + 1}}));
        uint64_t lib = validate_scene(t).self_intersection_pairs;
        CHECK(lib == brute_force_cross_mesh_pairs(t));
        CHECK(lib > 0);
    }
}

TEST_CASE("face-to-face contact does not count as intersection") {
    Scene s;
    s.meshes.push_back(make_box({{0, 0, 0}, {1, 1, 1}}));
    s.meshes.push_back(make_box({{1.0, 0, 0}, {2, 1, 1}})); // shared plane x=1
    ValidationReport r = validate_scene(s);
    CHECK(r.self_intersection_pairs == 0);
}

TEST_CASE("whitelisted overlaps are skipped") {
    Scene s;
    s.meshes.push_back(make_box({{0, 0, 0}, {1, 1, 1}}));
    s.meshes.push_back(make_box({{0.5, 0.5, 0.5}, {1.5, 1.5, 1.5}}));
    s.allowed_overlaps.push_back({0, 1});
    ValidationReport r = validate_scene(s);
    CHECK(r.self_intersection_pairs == 0);
}

TEST_CASE("connected components match the BFS oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Scene s;
        int cubes = 1 + static_cast<int>(rng.next_below(5));
        for (int i = 0; i < cubes; ++i) {
            double x = rng.uniform(0, 20);
            s.meshes.push_back(make_box({{x, 0, 0}, {x + 1, 1, 1}}));
        }
        CellularParams cp;
        cp.region_count = 4;
        cp.smooth_levels = 0;
        for (auto& m : build_cellular(cp, rng).meshes) {
            m.translate({0, 10, 0});
            s.meshes.push_back(std::move(m));
        }
        auto comps = connected_components(s);
        CHECK(comps.size() == bfs_component_count(s));
        // deterministic ordering by lowest vertex id
        for (size_t i = 1; i < comps.size(); ++i) {
            CHECK(comps[i - 1].front() < comps[i].front());
        }
    }
}

TEST_CASE("tubular scene validates with whitelisted shell contact") {
    dsl::DesignProgram prog;
    prog.name = "tub";
    dsl::Block b;
    b.kind = dsl::BlockKind::tubular;
    prog.blocks.push_back(b);
    auto cr = compile_program(prog);
    REQUIRE(ok(cr));
    ValidationReport r = validate_scene(scene(cr));
    CHECK(r.executed);
    CHECK(r.all_watertight());
    CHECK(r.self_intersection_pairs == 0);
    CHECK(r.floating_components.empty());
}

TEST_CASE("helical scene is contact-connected, not floating") {
    dsl::DesignProgram prog;
    prog.name = "hel";
    dsl::Block b;
    b.kind = dsl::BlockKind::helical;
    b.set("plies", 6.0);
    prog.blocks.push_back(b);
    auto cr = compile_program(prog);
    REQUIRE(ok(cr));
    ValidationReport r = validate_scene(scene(cr));
    CHECK(r.all_watertight());
    CHECK(r.floating_components.empty());
    CHECK(r.self_intersection_pairs == 0);
}

TEST_CASE("report serializes with exact field names") {
    ValidationReport r = validate_scene(one_cube());
    std::string j = report_to_json(r);
    for (const char* key :
         {"executed", "mesh_count", "watertight_per_mesh", "component_count",
          "floating_components", "self_intersection_pairs", "bbox", "warnings"}) {
        CHECK(j.find(std::string("\"") + key + "\"") != std::string::npos);
    }
}

TEST_CASE("render rejects empty scenes") {
    Scene s;
    CHECK_THROWS_AS(render::render_scene(s, {}), GeomError);
}

TEST_CASE("render hits non-background pixels and is deterministic") {
    Scene s = one_cube();
    render::Camera cam;
    for (auto view : {render::View::iso, render::View::front, render::View::top}) {
        cam.view = view;
        auto img = render::render_scene(s, cam);
        CHECK(img.width == 1280);
        CHECK(img.height == 720);
        REQUIRE(img.pixels.size() == 1280u * 720u * 3u);
        size_t lit = 0;
        for (size_t i = 0; i < img.pixels.size(); i += 3) {
            if (img.pixels[i] != render::kBackground) ++lit;
        }
        CHECK(lit > 1000);
        auto again = render::render_scene(s, cam);
        CHECK(img == again);
        auto serial = render::render_scene(s, cam, Exec::serial);
        CHECK(img == serial);
    }
}

TEST_CASE("ppm bytes are exact") {
    Scene s = one_cube();
    auto img = render::render_scene(s, {});
    std::filesystem::path p = std::filesystem::temp_directory_path() / "bioforge_test.ppm";
    render::write_ppm(img, p.string());
    auto size = std::filesystem::file_size(p);
    std::string header = "P6\n1280 720\n255\n";
    CHECK(size == header.size() + img.pixels.size());
    std::filesystem::remove(p);
}

TEST_CASE("stl export size formula and round trip") {
    Scene s = one_cube();
    auto bytes = io::stl_bytes(s);
    CHECK(bytes.size() == 84 + 12 * 50);

    auto tris = io::parse_stl(bytes);
    REQUIRE(tris.size() == 12);

    // vertex multiset identical within float32 rounding
    std::multiset<std::array<float, 3>> expect, got;
    for (const auto& t : s.meshes[0].triangles()) {
        for (uint32_t idx : t) {
            const Vec3& v = s.meshes[0].vertices[idx];
            expect.insert({static_cast<float>(v.x), static_cast<float>(v.y),
                           static_cast<float>(v.z)});
        }
    }
    for (const auto& t : tris) {
        for (int k = 0; k < 3; ++k) got.insert({t.v[k][0], t.v[k][1], t.v[k][2]});
    }
    CHECK(expect == got);

    std::filesystem::path p = std::filesystem::temp_directory_path() / "bioforge_test.stl";
    size_t n = io::export_stl(s, p.string());
    CHECK(n == std::filesystem::file_size(p));
    auto readback = io::read_stl(p.string());
    CHECK(readback.size() == 12);
    std::filesystem::remove(p);
}

TEST_CASE("validation does not modify the scene") {
    dsl::DesignProgram prog;
    prog.name = "c";
    dsl::Block b;
    b.kind = dsl::BlockKind::cellular;
    b.set("region_count", 6.0);
    prog.blocks.push_back(b);
    auto cr = compile_program(prog);
    REQUIRE(ok(cr));
    Scene s = scene(cr);
    auto before = s.meshes;
    validate_scene(s);
    REQUIRE(s.meshes.size() == before.size());
    for (size_t i = 0; i < s.meshes.size(); ++i) {
        CHECK(s.meshes[i].vertices == before[i].vertices);
        CHECK(s.meshes[i].faces == before[i].faces);
    }
}
