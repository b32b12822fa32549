#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace bioforge::dsl {

enum class BlockKind { helical, cellular, tubular, slab, primitive };

const char* to_string(BlockKind k);
bool block_kind_from_string(const std::string& s, BlockKind& out);

enum class Axis { x, y, z };
const char* to_string(Axis a);

// gradient <axis> <factor> | sandwich <thickness> | smooth <levels> | noise <degrees>
struct Modifier {
    enum class Kind { gradient, sandwich, smooth, noise };
    Kind kind = Kind::smooth;
    Axis axis = Axis::z;  // gradient only
    double value = 0.0;

    bool operator==(const Modifier& o) const {
        return kind == o.kind && axis == o.axis && value == o.value;
    }
};

const char* to_string(Modifier::Kind k);

// Numeric parameter or word parameter (enum-valued, e.g. fiber_profile).
using ParamValue = std::variant<double, std::string>;

struct Block {
    BlockKind kind = BlockKind::slab;
    // Explicitly set parameters only; the schema supplies defaults elsewhere.
    std::map<std::string, ParamValue> params;
    std::vector<Modifier> modifiers;

    bool operator==(const Block& o) const {
        return kind == o.kind && params == o.params && modifiers == o.modifiers;
    }

    bool has(const std::string& key) const { return params.count(key) != 0; }
    void set(const std::string& key, double v) { params[key] = v; }
    void set(const std::string& key, const std::string& v) { params[key] = v; }
};

struct DesignProgram {
    std::string name = "design";
    uint64_t seed = 0;
    std::vector<Block> blocks;

    bool operator==(const DesignProgram& o) const {
        return name == o.name && seed == o.seed && blocks == o.blocks;
    }
};

} // namespace bioforge::dsl
