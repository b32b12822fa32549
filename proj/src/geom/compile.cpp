#include "bioforge/geom/compile.hpp"

#include <algorithm>

#include "bioforge/dsl/schema.hpp"
#include "bioforge/geom/generators.hpp"
#include "bioforge/geom/metrics.hpp"
#include "bioforge/geom/subdivide.hpp"

namespace bioforge::geom {

namespace {

struct BlockOutput {
    std::vector<Mesh> meshes;
    BlockInfo info;
    std::vector<std::string> warnings;
    bool multi_component = false;
    bool shell_overlap = false; // meshes[0] and meshes[1] intentionally touch
    bool failed = false;
    CompileError err;
};

double rp(const dsl::Block& b, const char* name) { return dsl::resolved_param(b, name); }

HelicalParams helical_params(const dsl::Block& b) {
    HelicalParams p;
    p.plies = static_cast<unsigned>(rp(b, "plies"));
    p.ply_thickness = rp(b, "ply_thickness");
    p.rotation_deg = rp(b, "rotation_deg");
    p.noise_deg = rp(b, "noise_deg");
    p.fibers_per_ply = static_cast<unsigned>(rp(b, "fibers_per_ply"));
    p.rectangular_fibers = dsl::resolved_word_param(b, "fiber_profile") == "rectangle";
    p.fiber_radius = rp(b, "fiber_radius");
    p.fiber_width = rp(b, "fiber_width");
    p.footprint = rp(b, "footprint");
    p.fiber_segments = static_cast<unsigned>(rp(b, "fiber_segments"));
    for (const auto& m : b.modifiers) {
        if (m.kind == dsl::Modifier::Kind::noise) p.noise_deg = m.value;
    }
    return p;
}

CellularParams cellular_params(const dsl::Block& b) {
    CellularParams p;
    p.region_count = static_cast<unsigned>(rp(b, "region_count"));
    p.randomness = rp(b, "randomness");
    p.wall_gap = rp(b, "wall_gap");
    p.smooth_levels = static_cast<unsigned>(rp(b, "smooth_levels"));
    p.domain = {rp(b, "domain_x"), rp(b, "domain_y"), rp(b, "domain_z")};
    p.sandwich_thickness = rp(b, "sandwich_thickness");
    for (const auto& m : b.modifiers) {
        if (m.kind == dsl::Modifier::Kind::sandwich) p.sandwich_thickness = m.value;
        if (m.kind == dsl::Modifier::Kind::smooth)
            p.smooth_levels = static_cast<unsigned>(m.value);
    }
    return p;
}

TubularParams tubular_params(const dsl::Block& b) {
    TubularParams p;
    p.tubule_count = static_cast<unsigned>(rp(b, "tubule_count"));
    p.tubule_radius = rp(b, "tubule_radius");
    p.ellipticity = rp(b, "ellipticity");
    p.spacing = rp(b, "spacing");
    p.cortical_thickness = rp(b, "cortical_thickness");
    p.slab_x = rp(b, "slab_x");
    p.slab_y = rp(b, "slab_y");
    p.height = rp(b, "height");
    p.segments = static_cast<unsigned>(rp(b, "segments"));
    for (const auto& m : b.modifiers) {
        if (m.kind == dsl::Modifier::Kind::gradient) {
            GradientSpec g;
            g.axis = m.axis == dsl::Axis::x ? 0 : (m.axis == dsl::Axis::y ? 1 : 2);
            g.factor = m.value;
            p.gradient = g;
        }
    }
    return p;
}

SlabParams slab_params(const dsl::Block& b) {
    SlabParams p;
    p.size_x = rp(b, "size_x");
    p.size_y = rp(b, "size_y");
    p.size_z = rp(b, "size_z");
    p.translate_x = rp(b, "translate_x");
    p.translate_y = rp(b, "translate_y");
    p.translate_z = rp(b, "translate_z");
    p.rotate_z_deg = rp(b, "rotate_z");
    return p;
}

PrimitiveParams primitive_params(const dsl::Block& b) {
    PrimitiveParams p;
    std::string shape = dsl::resolved_word_param(b, "shape");
    if (shape == "sphere") p.shape = PrimitiveParams::Shape::sphere;
    else if (shape == "cylinder") p.shape = PrimitiveParams::Shape::cylinder;
    else if (shape == "cone") p.shape = PrimitiveParams::Shape::cone;
    else p.shape = PrimitiveParams::Shape::cube;
    p.size = rp(b, "size");
    p.radius = rp(b, "radius");
    p.height = rp(b, "height");
    p.segments = static_cast<unsigned>(rp(b, "segments"));
    p.count = static_cast<unsigned>(rp(b, "count"));
    p.grid_x = static_cast<unsigned>(rp(b, "grid_x"));
    p.grid_y = static_cast<unsigned>(rp(b, "grid_y"));
    p.spacing = rp(b, "spacing");
    p.ring_radius = rp(b, "ring_radius");
    p.rotate_z_deg = rp(b, "rotate_z");
    p.scale_x = rp(b, "scale_x");
    p.scale_y = rp(b, "scale_y");
    p.scale_z = rp(b, "scale_z");
    p.translate_x = rp(b, "translate_x");
    p.translate_y = rp(b, "translate_y");
    p.translate_z = rp(b, "translate_z");
    p.hole_radius = rp(b, "hole_radius");
    return p;
}

void fill_info(BlockInfo& info, const dsl::Block& b) {
    info.kind = b.kind;
    info.modifiers = b.modifiers;
    for (const auto& spec : dsl::schema_for(b.kind).params) {
        if (spec.type == dsl::ParamType::word) {
            info.word_params[spec.name] = dsl::resolved_word_param(b, spec.name);
        } else {
            info.params[spec.name] = dsl::resolved_param(b, spec.name);
        }
    }
    // modifiers override their twin parameters in the resolved view
    for (const auto& m : b.modifiers) {
        switch (m.kind) {
            case dsl::Modifier::Kind::noise:
                if (b.kind == dsl::BlockKind::helical) info.params["noise_deg"] = m.value;
                break;
            case dsl::Modifier::Kind::sandwich:
                if (b.kind == dsl::BlockKind::cellular)
                    info.params["sandwich_thickness"] = m.value;
                break;
            case dsl::Modifier::Kind::smooth:
                if (b.kind == dsl::BlockKind::cellular) info.params["smooth_levels"] = m.value;
                break;
            case dsl::Modifier::Kind::gradient:
                info.params["gradient_factor"] = m.value;
                break;
        }
    }
}

// Post-pass smooth modifier for non-cellular blocks (cellular handles its
// own smoothing before the wall-gap assembly).
unsigned smooth_request(const dsl::Block& b) {
    if (b.kind == dsl::BlockKind::cellular) return 0;
    unsigned levels = 0;
    for (const auto& m : b.modifiers) {
        if (m.kind == dsl::Modifier::Kind::smooth) levels = static_cast<unsigned>(m.value);
    }
    return levels;
}

BlockOutput compile_block(const dsl::DesignProgram& program, size_t index, Exec exec) {
    const dsl::Block& b = program.blocks[index];
    BlockOutput out;
    fill_info(out.info, b);
    Rng rng = Rng(program.seed).derive(index);
    try {
        switch (b.kind) {
            case dsl::BlockKind::helical: {
                out.meshes = build_helical(helical_params(b), rng);
                break;
            }
            case dsl::BlockKind::cellular: {
                CellularResult r = build_cellular(cellular_params(b), rng, exec);
                out.meshes = std::move(r.meshes);
                out.warnings = std::move(r.warnings);
                out.multi_component = true;
                break;
            }
            case dsl::BlockKind::tubular: {
                TubularResult r = build_tubular(tubular_params(b), rng);
                out.meshes = std::move(r.meshes);
                out.shell_overlap = r.has_shell;
                break;
            }
            case dsl::BlockKind::slab: {
                out.meshes.push_back(build_slab(slab_params(b)));
                break;
            }
            case dsl::BlockKind::primitive: {
                out.meshes = build_primitive(primitive_params(b));
                if (out.meshes.size() > 1) out.multi_component = true;
                break;
            }
        }
        if (unsigned level = smooth_request(b); level > 0) {
            for (auto& m : out.meshes) m = catmull_clark(m, level);
        }
    } catch (const GeomError& e) {
        out.failed = true;
        out.err.code = e.code();
        out.err.message = e.what();
        out.err.block_index = static_cast<int>(index);
        out.err.param = e.param();
        out.err.has_suggestion = e.has_suggestion();
        out.err.suggested = e.suggested();
    }
    return out;
}

} // namespace

SceneDescriptor describe_scene(const Scene& scene) {
    SceneDescriptor d;
    d.mesh_count = static_cast<uint32_t>(scene.meshes.size());
    for (const auto& info : scene.blocks) {
        std::string name = dsl::to_string(info.kind);
        if (std::find(d.classes.begin(), d.classes.end(), name) == d.classes.end()) {
            d.classes.push_back(name);
        }
    }
    uint32_t comps = 0;
    for (const auto& m : scene.meshes) {
        MeshMetrics mm = mesh_metrics(m);
        d.volume += mm.volume;
        d.bbox.expand(mm.bbox);
        comps += mm.component_hint;
    }
    d.components = comps;
    double bv = d.bbox.volume();
    d.porosity = bv > 0.0 ? 1.0 - d.volume / bv : 0.0;
    return d;
}

CompileResult compile_program(const dsl::DesignProgram& program, Exec exec) {
    const size_t n = program.blocks.size();
    std::vector<BlockOutput> outputs(n);

    if (exec == Exec::parallel && n > 1) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            outputs[i] = compile_block(program, static_cast<size_t>(i), Exec::serial);
        }
    } else {
        for (size_t i = 0; i < n; ++i) outputs[i] = compile_block(program, i, exec);
    }

    for (const auto& out : outputs) {
        if (out.failed) return out.err;
    }

    Scene scene;
    scene.program_name = program.name;
    scene.seed = program.seed;
    for (auto& out : outputs) {
        BlockInfo info = out.info;
        info.mesh_begin = scene.meshes.size();
        info.mesh_count = out.meshes.size();
        if (out.shell_overlap && out.meshes.size() >= 2) {
            scene.allowed_overlaps.emplace_back(
                static_cast<uint32_t>(scene.meshes.size()),
                static_cast<uint32_t>(scene.meshes.size() + 1));
        }
        if (out.multi_component) scene.multi_component_intended = true;
        for (auto& m : out.meshes) scene.meshes.push_back(std::move(m));
        for (auto& w : out.warnings) scene.warnings.push_back(std::move(w));
        scene.blocks.push_back(std::move(info));
    }
    if (n > 1) scene.multi_component_intended = true;
    return scene;
}

} // namespace bioforge::geom
