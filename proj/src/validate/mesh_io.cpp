#include "bioforge/validate/mesh_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace bioforge::io {

using geom::Vec3;

namespace {

void put_f32(std::vector<uint8_t>& out, float v) {
    uint8_t b[4];
    std::memcpy(b, &v, 4);
    out.insert(out.end(), b, b + 4);
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<uint8_t>((v >> 24) & 0xFF));
}

} // namespace

std::vector<uint8_t> stl_bytes(const geom::Scene& scene) {
    std::vector<uint8_t> out;
    char header[80] = {};
    std::snprintf(header, sizeof(header), "bioforge %s seed %llu", scene.program_name.c_str(),
                  static_cast<unsigned long long>(scene.seed));
    out.insert(out.end(), header, header + 80);

    uint32_t tri_count = 0;
    for (const auto& m : scene.meshes) tri_count += static_cast<uint32_t>(m.triangle_count());
    put_u32(out, tri_count);
    out.reserve(84 + static_cast<size_t>(tri_count) * 50);

    for (const auto& m : scene.meshes) {
        for (const auto& t : m.triangles()) {
            const Vec3& a = m.vertices[t[0]];
            const Vec3& b = m.vertices[t[1]];
            const Vec3& c = m.vertices[t[2]];
            Vec3 n = normalized(cross(b - a, c - a));
            put_f32(out, static_cast<float>(n.x));
            put_f32(out, static_cast<float>(n.y));
            put_f32(out, static_cast<float>(n.z));
            for (const Vec3* v : {&a, &b, &c}) {
                put_f32(out, static_cast<float>(v->x));
                put_f32(out, static_cast<float>(v->y));
                put_f32(out, static_cast<float>(v->z));
            }
            out.push_back(0);
            out.push_back(0);
        }
    }
    return out;
}

size_t export_stl(const geom::Scene& scene, const std::string& path) {
    std::vector<uint8_t> bytes = stl_bytes(scene);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
    return bytes.size();
}

std::vector<StlTriangle> parse_stl(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 84) throw std::runtime_error("truncated STL");
    uint32_t count = 0;
    std::memcpy(&count, bytes.data() + 80, 4);
    if (bytes.size() < 84 + static_cast<size_t>(count) * 50) {
        throw std::runtime_error("STL triangle count does not match file size");
    }
    std::vector<StlTriangle> tris(count);
    const uint8_t* p = bytes.data() + 84;
    for (uint32_t i = 0; i < count; ++i, p += 50) {
        float f[12];
        std::memcpy(f, p, 48);
        tris[i].nx = f[0];
        tris[i].ny = f[1];
        tris[i].nz = f[2];
        for (int v = 0; v < 3; ++v) {
            for (int k = 0; k < 3; ++k) tris[i].v[v][k] = f[3 + v * 3 + k];
        }
    }
    return tris;
}

std::vector<StlTriangle> read_stl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return parse_stl(bytes);
}

} // namespace bioforge::io
