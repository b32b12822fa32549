#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bioforge/dsl/ast.hpp"

namespace bioforge::dsl {

enum class ParamType { real, integer, word };

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::real;
    double min = 0.0;
    double max = 0.0;
    bool min_exclusive = false;
    double def = 0.0;               // numeric default
    std::string word_def;           // word default
    std::vector<std::string> words; // admissible values for word params
    std::vector<std::string> aliases;

    bool in_range(double v) const {
        if (min_exclusive ? !(v > min) : !(v >= min)) return false;
        return v <= max;
    }
    double clamp(double v) const;
};

// Per-kind parameter schema. Declaration order is the canonical print order.
struct BlockSchema {
    BlockKind kind;
    std::vector<ParamSpec> params;

    const ParamSpec* find(const std::string& name_or_alias) const;
    bool allows_modifier(Modifier::Kind m) const;
};

const BlockSchema& schema_for(BlockKind kind);

// All keywords the language knows: block kinds, modifier names, structural
// words and every schema parameter name. Used by the repair rules.
const std::vector<std::string>& all_keywords();

// Resolved numeric parameter: explicit value if present, else schema default.
double resolved_param(const Block& b, const std::string& name);
std::string resolved_word_param(const Block& b, const std::string& name);

// Modifier value bounds (gradient factor, smooth levels, noise degrees, ...).
bool modifier_value_ok(Modifier::Kind kind, double value);
double modifier_clamp(Modifier::Kind kind, double value);

} // namespace bioforge::dsl
