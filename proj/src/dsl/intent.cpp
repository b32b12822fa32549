#include "bioforge/dsl/intent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "bioforge/dsl/schema.hpp"
#include "bioforge/geom/generators.hpp"

namespace bioforge::dsl {

std::vector<std::string> tokenize_prompt(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) { tokens.push_back(cur); cur.clear(); }
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
        bool digit = std::isdigit(static_cast<unsigned char>(c)) != 0;
        bool alpha = std::isalpha(static_cast<unsigned char>(c)) != 0;
        if (digit) {
            if (!cur.empty() && !(std::isdigit(static_cast<unsigned char>(cur.back())) ||
                                  cur.back() == '.'))
                flush();
            cur += c;
        } else if (c == '.' && !cur.empty() &&
                   std::isdigit(static_cast<unsigned char>(cur.back())) &&
                   i + 1 < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            cur += c;
        } else if (alpha) {
            if (!cur.empty() && std::isdigit(static_cast<unsigned char>(cur.back())))
                flush();
            cur += c;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

namespace {

bool is_number_token(const std::string& t) {
    return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) != 0);
}

struct NounBinding {
    BlockKind cls;
    const char* param;
};

const std::map<std::string, std::vector<NounBinding>>& noun_table() {
    using K = BlockKind;
    static const std::map<std::string, std::vector<NounBinding>> table = {
        {"plies", {{K::helical, "plies"}}},
        {"ply", {{K::helical, "plies"}}},
        {"layers", {{K::helical, "plies"}}},
        {"layer", {{K::helical, "plies"}}},
        {"rotation", {{K::helical, "rotation_deg"}, {K::primitive, "rotate_z"}}},
        {"rotated", {{K::helical, "rotation_deg"}, {K::primitive, "rotate_z"}}},
        {"rotate", {{K::helical, "rotation_deg"}, {K::primitive, "rotate_z"}}},
        {"angle", {{K::helical, "rotation_deg"}, {K::primitive, "rotate_z"}}},
        {"degree", {{K::helical, "rotation_deg"}, {K::primitive, "rotate_z"}}},
        {"degrees", {{K::helical, "rotation_deg"}, {K::primitive, "rotate_z"}}},
        {"twist", {{K::helical, "rotation_deg"}}},
        {"fibers", {{K::helical, "fibers_per_ply"}}},
        {"fiber", {{K::helical, "fibers_per_ply"}}},
        {"noise", {{K::helical, "noise_deg"}}},
        {"regions", {{K::cellular, "region_count"}}},
        {"region", {{K::cellular, "region_count"}}},
        {"cells", {{K::cellular, "region_count"}}},
        {"cell", {{K::cellular, "region_count"}}},
        {"randomness", {{K::cellular, "randomness"}}},
        {"subdivision", {{K::cellular, "smooth_levels"}}},
        {"subdivisions", {{K::cellular, "smooth_levels"}}},
        {"gap", {{K::cellular, "wall_gap"}}},
        {"sheets", {{K::cellular, "sandwich_thickness"}}},
        {"sheet", {{K::cellular, "sandwich_thickness"}}},
        {"shell", {{K::cellular, "sandwich_thickness"}}},
        {"shells", {{K::cellular, "sandwich_thickness"}}},
        {"tubules", {{K::tubular, "tubule_count"}}},
        {"tubule", {{K::tubular, "tubule_count"}}},
        {"pores", {{K::tubular, "tubule_count"}}},
        {"pore", {{K::tubular, "tubule_count"}}},
        {"spacing", {{K::tubular, "spacing"}, {K::primitive, "spacing"}}},
        {"spaced", {{K::tubular, "spacing"}, {K::primitive, "spacing"}}},
        {"ellipticity", {{K::tubular, "ellipticity"}}},
        {"cortical", {{K::tubular, "cortical_thickness"}}},
        {"cortex", {{K::tubular, "cortical_thickness"}}},
        {"radius", {{K::tubular, "tubule_radius"}, {K::primitive, "radius"}}},
        {"segments", {{K::tubular, "segments"}, {K::primitive, "segments"}}},
        {"height", {{K::tubular, "height"}, {K::primitive, "height"}, {K::slab, "size_z"}}},
        {"tall", {{K::tubular, "height"}, {K::primitive, "height"}, {K::slab, "size_z"}}},
        {"thick", {{K::helical, "ply_thickness"},
                   {K::cellular, "sandwich_thickness"},
                   {K::tubular, "cortical_thickness"}}},
        {"thickness", {{K::helical, "ply_thickness"},
                       {K::cellular, "sandwich_thickness"},
                       {K::tubular, "cortical_thickness"}}},
        {"footprint", {{K::helical, "footprint"}}},
        {"copies", {{K::primitive, "count"}}},
        {"instances", {{K::primitive, "count"}}},
        {"size", {{K::primitive, "size"}}},
    };
    return table;
}

const std::set<std::string>& stopwords() {
    static const std::set<std::string> sw = {
        "a", "an", "the", "to", "that", "which", "with", "and", "of", "for",
        "in", "on", "using", "please", "me", "i", "need", "you", "can", "mm",
        "each", "into", "it", "its"};
    return sw;
}

struct Phrase {
    std::vector<std::string> tokens;
    bool is_class = false;
    BlockKind cls = BlockKind::slab;
    std::string flag;
};

std::vector<Phrase> collect_phrases(const WordBanks& banks) {
    std::vector<Phrase> out;
    for (const auto& [cls_name, list] : banks.motif_bank) {
        BlockKind k;
        if (!block_kind_from_string(cls_name, k)) continue;
        for (const auto& p : list) {
            Phrase ph;
            ph.tokens = tokenize_prompt(p);
            ph.is_class = true;
            ph.cls = k;
            if (!ph.tokens.empty()) out.push_back(std::move(ph));
        }
    }
    for (const auto& [flag, list] : banks.flag_bank) {
        for (const auto& p : list) {
            Phrase ph;
            ph.tokens = tokenize_prompt(p);
            ph.flag = flag;
            if (!ph.tokens.empty()) out.push_back(std::move(ph));
        }
    }
    // Longest phrase first; ties resolved by text for determinism.
    std::stable_sort(out.begin(), out.end(), [](const Phrase& a, const Phrase& b) {
        if (a.tokens.size() != b.tokens.size()) return a.tokens.size() > b.tokens.size();
        return a.tokens < b.tokens;
    });
    return out;
}

} // namespace

IntentSpec parse_intent(const std::string& prompt, const WordBanks& banks) {
    IntentSpec intent;
    std::vector<std::string> tokens = tokenize_prompt(prompt);
    if (tokens.empty()) return intent;

    const std::vector<Phrase> phrases = collect_phrases(banks);
    // consumed[i]: 0 free, 1 class phrase, 2 flag phrase
    std::vector<int> consumed(tokens.size(), 0);

    for (const auto& ph : phrases) {
        size_t n = ph.tokens.size();
        if (n > tokens.size()) continue;
        for (size_t i = 0; i + n <= tokens.size(); ++i) {
            bool hit = true;
            for (size_t j = 0; j < n && hit; ++j) {
                hit = consumed[i + j] == 0 && tokens[i + j] == ph.tokens[j];
            }
            if (!hit) continue;
            for (size_t j = 0; j < n; ++j) consumed[i + j] = ph.is_class ? 1 : 2;
            if (ph.is_class) {
                if (std::find(intent.detected_classes.begin(), intent.detected_classes.end(),
                              ph.cls) == intent.detected_classes.end()) {
                    intent.detected_classes.push_back(ph.cls);
                }
            } else {
                intent.motif_flags.insert(ph.flag);
            }
        }
    }
    if (intent.detected_classes.size() == 1) intent.single_class = intent.detected_classes[0];

    // "AxB grid" pattern, scanned on the raw token stream.
    for (size_t i = 0; i + 2 < tokens.size(); ++i) {
        if (is_number_token(tokens[i]) && tokens[i + 1] == "x" && is_number_token(tokens[i + 2])) {
            for (size_t d = 3; d <= 6 && i + d < tokens.size(); ++d) {
                if (tokens[i + d] == "grid") {
                    intent.numeric_params["grid_x"] = std::stod(tokens[i]);
                    intent.numeric_params["grid_y"] = std::stod(tokens[i + 2]);
                    intent.param_class["grid_x"] = BlockKind::primitive;
                    intent.param_class["grid_y"] = BlockKind::primitive;
                    consumed[i] = consumed[i + 2] = 2;
                    break;
                }
            }
        }
    }

    // Bind remaining numbers to the nearest parameter noun within 3 tokens;
    // a noun following the number wins ties. Tokens consumed by a class
    // phrase never act as nouns.
    std::vector<bool> number_used(tokens.size(), false);
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (!is_number_token(tokens[i]) || consumed[i] != 0) continue;
        const NounBinding* chosen = nullptr;
        for (size_t d = 1; d <= 3 && !chosen; ++d) {
            for (int dir : {+1, -1}) {
                size_t j = (dir > 0) ? i + d : (i >= d ? i - d : tokens.size());
                if (j >= tokens.size() || consumed[j] == 1) continue;
                auto it = noun_table().find(tokens[j]);
                if (it == noun_table().end()) continue;
                for (const auto& nb : it->second) {
                    bool class_ok = intent.detected_classes.empty() ||
                                    std::find(intent.detected_classes.begin(),
                                              intent.detected_classes.end(),
                                              nb.cls) != intent.detected_classes.end();
                    if (class_ok) { chosen = &nb; break; }
                }
                if (chosen) break;
            }
        }
        if (chosen && !intent.numeric_params.count(chosen->param)) {
            intent.numeric_params[chosen->param] = std::stod(tokens[i]);
            intent.param_class[chosen->param] = chosen->cls;
            number_used[i] = true;
        }
    }

    for (size_t i = 0; i < tokens.size(); ++i) {
        if (consumed[i] != 0 || number_used[i]) continue;
        if (is_number_token(tokens[i])) continue;
        if (stopwords().count(tokens[i])) continue;
        intent.free_terms.push_back(tokens[i]);
    }
    return intent;
}

namespace {

void apply_flags(Block& b, const IntentSpec& intent) {
    const bool smoothed = intent.motif_flags.count("smoothed") != 0;
    const bool layered = intent.motif_flags.count("layered") != 0;
    const bool thin = intent.motif_flags.count("thin_shell") != 0;
    const bool gradient = intent.motif_flags.count("gradient") != 0;

    if (b.kind == BlockKind::cellular) {
        if (smoothed && !b.has("smooth_levels")) b.set("smooth_levels", 2.0);
        if (thin && !b.has("sandwich_thickness")) b.set("sandwich_thickness", 0.3);
        else if (layered && !b.has("sandwich_thickness")) b.set("sandwich_thickness", 1.0);
    } else if (smoothed && schema_for(b.kind).allows_modifier(Modifier::Kind::smooth)) {
        bool already = false;
        for (const auto& m : b.modifiers) already = already || m.kind == Modifier::Kind::smooth;
        if (!already && b.kind != BlockKind::helical) {
            b.modifiers.push_back({Modifier::Kind::smooth, Axis::z, 1.0});
        }
    }
    if (gradient && b.kind == BlockKind::tubular) {
        bool already = false;
        for (const auto& m : b.modifiers) already = already || m.kind == Modifier::Kind::gradient;
        if (!already) b.modifiers.push_back({Modifier::Kind::gradient, Axis::z, 2.0});
    }
}

// Grows the slab and relaxes spacing so the requested tubule layout always
// fits; compile must never fail on generated programs.
void make_tubular_feasible(Block& b) {
    double radius = resolved_param(b, "tubule_radius");
    double ellipticity = resolved_param(b, "ellipticity");
    double count = resolved_param(b, "tubule_count");
    double spacing = resolved_param(b, "spacing");
    double cortical = resolved_param(b, "cortical_thickness");
    double scale = 1.0;
    for (const auto& m : b.modifiers) {
        if (m.kind == Modifier::Kind::gradient) {
            scale = std::max(m.value, 1.0 / m.value);
        }
    }
    double semi_x = radius * ellipticity * scale;
    double semi_y = radius * scale;
    double max_semi = std::max(semi_x, semi_y);
    if (spacing <= 2.05 * max_semi) {
        spacing = 2.2 * max_semi;
        b.set("spacing", spacing);
    }
    if (count < 1) return;
    size_t want = static_cast<size_t>(count);
    auto fits = [&](double sx, double sy) {
        return geom::hex_centers(sx, sy, cortical, spacing, semi_x, semi_y, want).size() >= want;
    };
    double sx = resolved_param(b, "slab_x");
    double sy = resolved_param(b, "slab_y");
    if (fits(sx, sy)) return;
    double cols = std::ceil(std::sqrt(static_cast<double>(want)));
    double rows = std::ceil(static_cast<double>(want) / cols);
    double need_x = 2.0 * (cortical + semi_x) + (cols + 0.5) * spacing;
    double need_y = 2.0 * (cortical + semi_y) + (rows + 0.5) * spacing * 0.8660254037844386;
    sx = std::max(sx, need_x);
    sy = std::max(sy, need_y);
    while (!fits(sx, sy)) { // guard against packing edge cases
        sx *= 1.2;
        sy *= 1.2;
    }
    b.set("slab_x", std::min(sx, 1000.0));
    b.set("slab_y", std::min(sy, 1000.0));
}

} // namespace

DesignProgram program_from_intent(const IntentSpec& intent, uint64_t seed) {
    DesignProgram p;
    p.name = "auto";
    p.seed = seed;
    std::vector<BlockKind> classes = intent.detected_classes;
    if (classes.empty()) classes.push_back(BlockKind::slab);

    for (BlockKind kind : classes) {
        Block b;
        b.kind = kind;
        const BlockSchema& schema = schema_for(kind);
        for (const auto& [param, value] : intent.numeric_params) {
            auto cls_it = intent.param_class.find(param);
            if (cls_it != intent.param_class.end() && cls_it->second != kind) continue;
            const ParamSpec* spec = schema.find(param);
            if (!spec || spec->type == ParamType::word) continue;
            b.set(spec->name, spec->clamp(value));
        }
        apply_flags(b, intent);
        if (kind == BlockKind::tubular) make_tubular_feasible(b);
        if (kind == BlockKind::primitive && b.has("grid_x") && !b.has("grid_y")) {
            b.set("grid_y", 1.0);
        }
        p.blocks.push_back(std::move(b));
    }
    return p;
}

} // namespace bioforge::dsl
