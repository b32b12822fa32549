#include "bioforge/validate/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "bioforge/geom/errors.hpp"

namespace bioforge::render {

using geom::Box3;
using geom::Scene;
using geom::Vec3;
using geom::cross;
using geom::dot;
using geom::normalized;

const char* to_string(View v) {
    switch (v) {
        case View::iso: return "iso";
        case View::front: return "front";
        case View::top: return "top";
    }
    return "?";
}

bool view_from_string(const std::string& s, View& out) {
    if (s == "iso") { out = View::iso; return true; }
    if (s == "front") { out = View::front; return true; }
    if (s == "top") { out = View::top; return true; }
    return false;
}

namespace {

struct Basis {
    Vec3 right, up, toward; // toward points from scene to camera
    Vec3 light;
};

Basis basis_for(View v) {
    switch (v) {
        case View::front:
            return {{1, 0, 0}, {0, 0, 1}, {0, -1, 0}, normalized({0.35, -0.8, 0.55})};
        case View::top:
            return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, normalized({0.3, 0.25, 0.9})};
        case View::iso:
        default: {
            Vec3 toward = normalized({1, -1, 1});
            Vec3 up{0, 0, 1};
            Vec3 right = normalized(cross(up, toward));
            up = cross(toward, right);
            return {right, up, toward, normalized({0.5, -0.6, 0.7})};
        }
    }
}

struct ScreenVertex {
    double x, y, depth;
};

} // namespace

RenderImage render_scene(const Scene& scene, const Camera& camera, Exec exec) {
    if (scene.meshes.empty()) {
        throw geom::GeomError(geom::GeomErrorCode::EmptyScene, "cannot render an empty scene");
    }
    const Basis basis = basis_for(camera.view);
    const Box3 bbox = scene.bounds();
    const Vec3 center = bbox.center();

    // project the bbox corners to size the orthographic window
    double min_r = 0, max_r = 0, min_u = 0, max_u = 0;
    bool first = true;
    for (int corner = 0; corner < 8; ++corner) {
        Vec3 p{corner & 1 ? bbox.hi.x : bbox.lo.x, corner & 2 ? bbox.hi.y : bbox.lo.y,
               corner & 4 ? bbox.hi.z : bbox.lo.z};
        Vec3 d = p - center;
        double r = dot(d, basis.right);
        double u = dot(d, basis.up);
        if (first) {
            min_r = max_r = r;
            min_u = max_u = u;
            first = false;
        } else {
            min_r = std::min(min_r, r);
            max_r = std::max(max_r, r);
            min_u = std::min(min_u, u);
            max_u = std::max(max_u, u);
        }
    }
    const double aspect = static_cast<double>(kWidth) / kHeight;
    double half_u = std::max({(max_u - min_u) / 2.0, (max_r - min_r) / 2.0 / aspect, 1e-6});
    half_u *= 1.0 + camera.margin;
    const double half_r = half_u * aspect;

    // screen-space triangles, flat shade per triangle
    struct RasterTri {
        ScreenVertex v[3];
        uint8_t shade;
        int ymin, ymax;
    };
    std::vector<RasterTri> tris;
    for (uint32_t mi = 0; mi < scene.meshes.size(); ++mi) {
        const auto& mesh = scene.meshes[mi];
        // grayscale albedo cycles with mesh index
        double albedo = 0.45 + 0.5 * ((mi * 2654435761u % 97) / 96.0);
        for (const auto& f : mesh.faces) {
            for (size_t k = 2; k < f.size(); ++k) {
                const Vec3& a = mesh.vertices[f[0]];
                const Vec3& b = mesh.vertices[f[k - 1]];
                const Vec3& c = mesh.vertices[f[k]];
                Vec3 n = cross(b - a, c - a);
                double len = n.length();
                if (len <= 0) continue;
                n = n / len;
                double lambert = std::max(0.0, dot(n, basis.light));
                double value = std::min(1.0, (0.22 + 0.78 * lambert) * albedo);
                RasterTri rt;
                rt.shade = static_cast<uint8_t>(std::lround(value * 255.0));
                const Vec3* verts[3] = {&a, &b, &c};
                for (int i = 0; i < 3; ++i) {
                    Vec3 d = *verts[i] - center;
                    double r = dot(d, basis.right);
                    double u = dot(d, basis.up);
                    double depth = -dot(d, basis.toward);
                    rt.v[i].x = (r + half_r) / (2.0 * half_r) * kWidth;
                    rt.v[i].y = (half_u - u) / (2.0 * half_u) * kHeight;
                    rt.v[i].depth = depth;
                }
                double ymin = std::min({rt.v[0].y, rt.v[1].y, rt.v[2].y});
                double ymax = std::max({rt.v[0].y, rt.v[1].y, rt.v[2].y});
                rt.ymin = std::max(0, static_cast<int>(std::floor(ymin)));
                rt.ymax = std::min(static_cast<int>(kHeight) - 1,
                                   static_cast<int>(std::ceil(ymax)));
                if (rt.ymin <= rt.ymax) tris.push_back(rt);
            }
        }
    }

    // row buckets keep parallel rasterization deterministic: every row scans
    // its triangles in index order
    std::vector<std::vector<uint32_t>> rows(kHeight);
    for (uint32_t t = 0; t < tris.size(); ++t) {
        for (int y = tris[t].ymin; y <= tris[t].ymax; ++y) {
            rows[y].push_back(t);
        }
    }

    RenderImage img;
    img.width = kWidth;
    img.height = kHeight;
    img.pixels.assign(static_cast<size_t>(kWidth) * kHeight * 3, kBackground);

    auto raster_row = [&](int y) {
        double py = y + 0.5;
        std::vector<double> zbuf(kWidth, std::numeric_limits<double>::max());
        uint8_t* rowpix = img.pixels.data() + static_cast<size_t>(y) * kWidth * 3;
        for (uint32_t t : rows[y]) {
            const RasterTri& rt = tris[t];
            const ScreenVertex &a = rt.v[0], &b = rt.v[1], &c = rt.v[2];
            double area = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
            if (area == 0.0) continue;
            double xmin = std::min({a.x, b.x, c.x});
            double xmax = std::max({a.x, b.x, c.x});
            int x0 = std::max(0, static_cast<int>(std::floor(xmin)));
            int x1 = std::min(static_cast<int>(kWidth) - 1, static_cast<int>(std::ceil(xmax)));
            for (int x = x0; x <= x1; ++x) {
                double px = x + 0.5;
                double w0 = (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
                double w1 = (c.x - b.x) * (py - b.y) - (c.y - b.y) * (px - b.x);
                double w2 = (a.x - c.x) * (py - c.y) - (a.y - c.y) * (px - c.x);
                bool inside = area > 0 ? (w0 >= 0 && w1 >= 0 && w2 >= 0)
                                       : (w0 <= 0 && w1 <= 0 && w2 <= 0);
                if (!inside) continue;
                double l0 = w1 / area, l1 = w2 / area, l2 = w0 / area;
                double depth = l0 * a.depth + l1 * b.depth + l2 * c.depth;
                if (depth < zbuf[x]) {
                    zbuf[x] = depth;
                    rowpix[x * 3 + 0] = rt.shade;
                    rowpix[x * 3 + 1] = rt.shade;
                    rowpix[x * 3 + 2] = rt.shade;
                }
            }
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (int y = 0; y < static_cast<int>(kHeight); ++y) raster_row(y);
    } else {
        for (int y = 0; y < static_cast<int>(kHeight); ++y) raster_row(y);
    }
    return img;
}

void write_ppm(const RenderImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
}

} // namespace bioforge::render
