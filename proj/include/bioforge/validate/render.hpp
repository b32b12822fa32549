#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bioforge/exec.hpp"
#include "bioforge/geom/scene.hpp"

namespace bioforge::render {

enum class View { iso, front, top };
const char* to_string(View v);
bool view_from_string(const std::string& s, View& out);

struct Camera {
    View view = View::iso;
    double margin = 0.10; // orthographic auto-fit margin around the scene bbox
};

struct RenderImage {
    uint32_t width = 0, height = 0;
    std::vector<uint8_t> pixels; // row-major RGB

    bool operator==(const RenderImage& o) const {
        return width == o.width && height == o.height && pixels == o.pixels;
    }
};

inline constexpr uint32_t kWidth = 1280;
inline constexpr uint32_t kHeight = 720;
inline constexpr uint8_t kBackground = 30;

// Orthographic z-buffer rasterization with flat Lambert shading, one fixed
// directional light per view, per-mesh grayscale by mesh index. Deterministic
// for a fixed (scene, view) regardless of the execution policy (rows are
// owned by single workers, triangles processed in index order).
RenderImage render_scene(const geom::Scene& scene, const Camera& camera,
                         Exec exec = Exec::parallel);

// "P6\n{w} {h}\n255\n" + RGB bytes.
void write_ppm(const RenderImage& img, const std::string& path);

} // namespace bioforge::render
