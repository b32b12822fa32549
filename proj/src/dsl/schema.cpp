#include "bioforge/dsl/schema.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bioforge::dsl {

const char* to_string(BlockKind k) {
    switch (k) {
        case BlockKind::helical: return "helical";
        case BlockKind::cellular: return "cellular";
        case BlockKind::tubular: return "tubular";
        case BlockKind::slab: return "slab";
        case BlockKind::primitive: return "primitive";
    }
    return "?";
}

bool block_kind_from_string(const std::string& s, BlockKind& out) {
    if (s == "helical") { out = BlockKind::helical; return true; }
    if (s == "cellular") { out = BlockKind::cellular; return true; }
    if (s == "tubular") { out = BlockKind::tubular; return true; }
    if (s == "slab") { out = BlockKind::slab; return true; }
    if (s == "primitive") { out = BlockKind::primitive; return true; }
    return false;
}

const char* to_string(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

const char* to_string(Modifier::Kind k) {
    switch (k) {
        case Modifier::Kind::gradient: return "gradient";
        case Modifier::Kind::sandwich: return "sandwich";
        case Modifier::Kind::smooth: return "smooth";
        case Modifier::Kind::noise: return "noise";
    }
    return "?";
}

double ParamSpec::clamp(double v) const {
    double lo = min_exclusive ? std::nextafter(min, max) : min;
    double c = std::min(std::max(v, lo), max);
    if (type == ParamType::integer) c = std::round(c);
    return c;
}

namespace {

ParamSpec real(const std::string& name, double min, double max, double def,
               bool min_excl = false, std::vector<std::string> aliases = {}) {
    ParamSpec p;
    p.name = name;
    p.type = ParamType::real;
    p.min = min;
    p.max = max;
    p.min_exclusive = min_excl;
    p.def = def;
    p.aliases = std::move(aliases);
    return p;
}

ParamSpec integer(const std::string& name, double min, double max, double def,
                  std::vector<std::string> aliases = {}) {
    ParamSpec p;
    p.name = name;
    p.type = ParamType::integer;
    p.min = min;
    p.max = max;
    p.def = def;
    p.aliases = std::move(aliases);
    return p;
}

ParamSpec word(const std::string& name, std::vector<std::string> words,
               const std::string& def) {
    ParamSpec p;
    p.name = name;
    p.type = ParamType::word;
    p.words = std::move(words);
    p.word_def = def;
    return p;
}

BlockSchema make_helical() {
    BlockSchema s;
    s.kind = BlockKind::helical;
    s.params = {
        integer("plies", 1, 64, 8, {"layers"}),
        real("ply_thickness", 0, 10, 0.5, true, {"thickness"}),
        real("rotation_deg", -360, 360, 16, false, {"angle"}),
        real("noise_deg", 0, 180, 0),
        integer("fibers_per_ply", 1, 256, 12, {"fibers"}),
        word("fiber_profile", {"cylinder", "rectangle"}, "cylinder"),
        real("fiber_radius", 0, 5, 0.25, true),
        real("fiber_width", 0, 10, 0.6, true),
        real("footprint", 0, 1000, 10, true),
        integer("fiber_segments", 6, 64, 16),
    };
    return s;
}

BlockSchema make_cellular() {
    BlockSchema s;
    s.kind = BlockKind::cellular;
    s.params = {
        integer("region_count", 1, 200, 24, {"regions", "cells"}),
        real("randomness", 0, 1, 0.5),
        real("wall_gap", 0, 10, 0.15, false, {"gap"}),
        integer("smooth_levels", 0, 3, 1),
        real("domain_x", 0, 1000, 10, true),
        real("domain_y", 0, 1000, 10, true),
        real("domain_z", 0, 1000, 10, true),
        real("sandwich_thickness", 0, 10, 0),
    };
    return s;
}

BlockSchema make_tubular() {
    BlockSchema s;
    s.kind = BlockKind::tubular;
    s.params = {
        integer("tubule_count", 0, 400, 16, {"tubules"}),
        real("tubule_radius", 0, 10, 0.6, true, {"radius"}),
        real("ellipticity", 1, 8, 1),
        real("spacing", 0, 100, 1.8, true),
        real("cortical_thickness", 0, 10, 0.8, false, {"cortex"}),
        real("slab_x", 0, 1000, 10, true),
        real("slab_y", 0, 1000, 10, true),
        real("height", 0, 1000, 4, true, {"h"}),
        integer("segments", 8, 256, 64),
    };
    return s;
}

BlockSchema make_slab() {
    BlockSchema s;
    s.kind = BlockKind::slab;
    s.params = {
        real("size_x", 0, 1000, 10, true),
        real("size_y", 0, 1000, 10, true),
        real("size_z", 0, 1000, 2, true),
        real("translate_x", -1000, 1000, 0),
        real("translate_y", -1000, 1000, 0),
        real("translate_z", -1000, 1000, 0),
        real("rotate_z", -360, 360, 0),
    };
    return s;
}

BlockSchema make_primitive() {
    BlockSchema s;
    s.kind = BlockKind::primitive;
    s.params = {
        word("shape", {"cube", "sphere", "cylinder", "cone"}, "cube"),
        real("size", 0, 1000, 2, true),
        real("radius", 0, 1000, 1, true),
        real("height", 0, 1000, 2, true),
        integer("segments", 3, 128, 24),
        integer("count", 1, 100, 1, {"copies"}),
        integer("grid_x", 1, 32, 1),
        integer("grid_y", 1, 32, 1),
        real("spacing", 0, 1000, 3, true),
        real("ring_radius", 0, 1000, 0),
        real("rotate_z", -360, 360, 0),
        real("scale_x", 0, 100, 1, true),
        real("scale_y", 0, 100, 1, true),
        real("scale_z", 0, 100, 1, true),
        real("translate_x", -1000, 1000, 0),
        real("translate_y", -1000, 1000, 0),
        real("translate_z", -1000, 1000, 0),
        real("hole_radius", 0, 1000, 0),
    };
    return s;
}

} // namespace

const ParamSpec* BlockSchema::find(const std::string& name_or_alias) const {
    for (const auto& p : params) {
        if (p.name == name_or_alias) return &p;
        for (const auto& a : p.aliases) {
            if (a == name_or_alias) return &p;
        }
    }
    return nullptr;
}

bool BlockSchema::allows_modifier(Modifier::Kind m) const {
    switch (m) {
        case Modifier::Kind::smooth: return true;
        case Modifier::Kind::gradient: return kind == BlockKind::tubular;
        case Modifier::Kind::sandwich: return kind == BlockKind::cellular;
        case Modifier::Kind::noise: return kind == BlockKind::helical;
    }
    return false;
}

const BlockSchema& schema_for(BlockKind kind) {
    static const BlockSchema helical = make_helical();
    static const BlockSchema cellular = make_cellular();
    static const BlockSchema tubular = make_tubular();
    static const BlockSchema slab = make_slab();
    static const BlockSchema primitive = make_primitive();
    switch (kind) {
        case BlockKind::helical: return helical;
        case BlockKind::cellular: return cellular;
        case BlockKind::tubular: return tubular;
        case BlockKind::slab: return slab;
        case BlockKind::primitive: return primitive;
    }
    return slab;
}

const std::vector<std::string>& all_keywords() {
    static const std::vector<std::string> kws = [] {
        std::vector<std::string> v = {"design", "seed",
                                      "helical", "cellular", "tubular", "slab", "primitive",
                                      "gradient", "sandwich", "smooth", "noise",
                                      "x", "y", "z"};
        for (BlockKind k : {BlockKind::helical, BlockKind::cellular, BlockKind::tubular,
                            BlockKind::slab, BlockKind::primitive}) {
            for (const auto& p : schema_for(k).params) {
                if (std::find(v.begin(), v.end(), p.name) == v.end()) v.push_back(p.name);
                for (const auto& w : p.words) {
                    if (std::find(v.begin(), v.end(), w) == v.end()) v.push_back(w);
                }
            }
        }
        return v;
    }();
    return kws;
}

double resolved_param(const Block& b, const std::string& name) {
    auto it = b.params.find(name);
    if (it != b.params.end()) {
        if (const double* d = std::get_if<double>(&it->second)) return *d;
    }
    const ParamSpec* spec = schema_for(b.kind).find(name);
    if (!spec) throw std::logic_error("unknown parameter: " + name);
    return spec->def;
}

std::string resolved_word_param(const Block& b, const std::string& name) {
    auto it = b.params.find(name);
    if (it != b.params.end()) {
        if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
    }
    const ParamSpec* spec = schema_for(b.kind).find(name);
    if (!spec) throw std::logic_error("unknown parameter: " + name);
    return spec->word_def;
}

bool modifier_value_ok(Modifier::Kind kind, double value) {
    switch (kind) {
        case Modifier::Kind::gradient: return value > 0.0 && value <= 20.0;
        case Modifier::Kind::sandwich: return value >= 0.0 && value <= 10.0;
        case Modifier::Kind::smooth:
            return value >= 0.0 && value <= 3.0 && value == std::floor(value);
        case Modifier::Kind::noise: return value >= 0.0 && value <= 180.0;
    }
    return false;
}

double modifier_clamp(Modifier::Kind kind, double value) {
    switch (kind) {
        case Modifier::Kind::gradient: return std::min(std::max(value, 0.05), 20.0);
        case Modifier::Kind::sandwich: return std::min(std::max(value, 0.0), 10.0);
        case Modifier::Kind::smooth: return std::round(std::min(std::max(value, 0.0), 3.0));
        case Modifier::Kind::noise: return std::min(std::max(value, 0.0), 180.0);
    }
    return value;
}

} // namespace bioforge::dsl
