#include "bioforge/dsl/word_banks.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

namespace bioforge::dsl {

namespace {

WordBanks make_builtin() {
    WordBanks b;
    b.motif_bank = {
        {"helical",
         {"helical", "helicoidal", "bouligand structure", "helical twisted ply structure",
          "helicoidal laminate", "twisted plywood architecture", "rotated ply stack",
          "helical stack of fibrous layers", "twisted fiber laminate"}},
        {"cellular",
         {"cellular", "voronoi foam", "cellular foam structure", "porous cellular core",
          "open cell foam", "voronoi cell solid", "cellular sandwich panel",
          "fractured cellular block", "cellular solid"}},
        {"tubular",
         {"tubular", "tubule array", "tubular slab", "aligned tubule array",
          "porous tubular structure", "tubular slab with aligned pores",
          "hoof wall architecture", "dentin like tubule network", "tubular porous material"}},
        {"slab",
         {"slab", "flat slab", "rectangular plate", "solid slab", "flat panel",
          "thin plate"}},
        {"primitive",
         {"cube", "cubes", "sphere", "spheres", "cylinder", "cylinders", "cone",
          "grid of cubes", "array of cylinders", "ring of cylinders",
          "box with a cylindrical hole", "tube"}},
    };
    b.verbs = {"write", "generate", "create", "produce", "compose", "draft", "give me"};
    b.mediums = {"blender script", "blender python script", "python script for blender",
                 "bpy script", "geometry script", "3d design script"};
    b.tenses = {"builds", "creates", "makes", "constructs", "generates", "producing",
                "making", "that models"};
    b.templates = {
        "{verb} a {medium} that {tense} a {shape}",
        "Write a {medium} to make a {shape}",
        "{verb} a {medium} which {tense} a {shape}",
        "Please {verb} a {medium} for a {shape}",
        "I need a {medium} that {tense} a {shape}",
        "Using a {medium}, make a {shape}",
        "{verb} a {shape} with a {medium}",
        "Make a {shape} using a {medium}",
        "Can you {verb} a {medium} that {tense} a {shape}",
        "{verb} a {medium} {tense} a {shape}",
    };
    b.flag_bank = {
        {"gradient",
         {"gradient", "graded", "gradient porosity", "porosity gradient",
          "gradient in tubule size", "spatially varying"}},
        {"smoothed", {"smoothed", "smooth", "rounded", "organic curved surfaces"}},
        {"fibrous", {"fibrous", "fiber reinforced", "fibers", "filamentous"}},
        {"layered", {"layered", "laminated", "sandwich", "stacked layers", "face sheets"}},
        {"thin_shell", {"thin shell", "thin shells", "thin face sheets", "thin walls",
                        "thin sandwich layers"}},
    };
    return b;
}

std::vector<std::string> get_list(const nlohmann::json& j, const char* key) {
    std::vector<std::string> out;
    if (j.contains(key)) {
        for (const auto& e : j.at(key)) out.push_back(e.get<std::string>());
    }
    return out;
}

} // namespace

const WordBanks& WordBanks::builtin() {
    static const WordBanks b = make_builtin();
    return b;
}

WordBanks WordBanks::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    WordBanks b;
    for (const auto& [cls, phrases] : j.at("motif_bank").items()) {
        std::vector<std::string> v;
        for (const auto& p : phrases) v.push_back(p.get<std::string>());
        b.motif_bank[cls] = std::move(v);
    }
    const auto& pb = j.at("primitive_bank");
    b.verbs = get_list(pb, "verbs");
    b.mediums = get_list(pb, "mediums");
    b.tenses = get_list(pb, "tenses");
    b.templates = get_list(j, "templates");
    if (j.contains("flag_bank")) {
        for (const auto& [flag, phrases] : j.at("flag_bank").items()) {
            std::vector<std::string> v;
            for (const auto& p : phrases) v.push_back(p.get<std::string>());
            b.flag_bank[flag] = std::move(v);
        }
    } else {
        b.flag_bank = builtin().flag_bank;
    }
    b.validate();
    return b;
}

std::string WordBanks::to_json() const {
    nlohmann::json j;
    for (const auto& [cls, phrases] : motif_bank) j["motif_bank"][cls] = phrases;
    j["primitive_bank"]["verbs"] = verbs;
    j["primitive_bank"]["mediums"] = mediums;
    j["primitive_bank"]["tenses"] = tenses;
    j["templates"] = templates;
    for (const auto& [flag, phrases] : flag_bank) j["flag_bank"][flag] = phrases;
    return j.dump(2);
}

void WordBanks::validate() const {
    for (const auto& [cls, phrases] : motif_bank) {
        if (phrases.size() < 3) {
            throw std::runtime_error("word bank for class '" + cls +
                                     "' needs at least 3 phrases");
        }
    }
    const std::set<std::string> fillable = {"verb", "medium", "tense", "shape"};
    for (const auto& tpl : templates) {
        size_t i = 0;
        while ((i = tpl.find('{', i)) != std::string::npos) {
            size_t j = tpl.find('}', i);
            if (j == std::string::npos) throw std::runtime_error("unterminated placeholder in template: " + tpl);
            std::string name = tpl.substr(i + 1, j - i - 1);
            if (!fillable.count(name)) {
                throw std::runtime_error("template placeholder '{" + name +
                                         "}' cannot be filled from the banks");
            }
            i = j + 1;
        }
    }
    if (verbs.empty() || mediums.empty() || tenses.empty() || templates.empty()) {
        throw std::runtime_error("primitive bank and templates must not be empty");
    }
}

} // namespace bioforge::dsl
