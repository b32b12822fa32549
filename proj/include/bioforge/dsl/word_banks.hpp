#pragma once

#include <map>
#include <string>
#include <vector>

namespace bioforge::dsl {

// Phrase banks driving both instruction generation and prompt parsing.
// Serialized as one JSON document:
//   { "motif_bank": {class: [phrases]},
//     "primitive_bank": {"verbs": [], "mediums": [], "tenses": []},
//     "templates": [],
//     "flag_bank": {flag: [phrases]} }   (flag_bank optional)
struct WordBanks {
    std::map<std::string, std::vector<std::string>> motif_bank;
    std::vector<std::string> verbs;
    std::vector<std::string> mediums;
    std::vector<std::string> tenses;
    std::vector<std::string> templates;
    std::map<std::string, std::vector<std::string>> flag_bank;

    static const WordBanks& builtin();
    static WordBanks from_json(const std::string& text);
    std::string to_json() const;

    // Throws std::runtime_error when a class has fewer than 3 phrases or a
    // template contains a placeholder the banks cannot fill.
    void validate() const;
};

} // namespace bioforge::dsl
