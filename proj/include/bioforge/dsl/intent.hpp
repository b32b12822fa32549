#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bioforge/dsl/ast.hpp"
#include "bioforge/dsl/word_banks.hpp"

namespace bioforge::dsl {

// Structured reading of a natural-language prompt. target class comes only
// from word-bank matches; numbers are bound to the nearest parameter noun
// within 3 tokens; everything else lands in free_terms.
struct IntentSpec {
    std::optional<BlockKind> single_class;     // nullopt means composite
    std::vector<BlockKind> detected_classes;   // first-occurrence order, unique
    std::map<std::string, double> numeric_params;
    std::map<std::string, BlockKind> param_class;
    std::set<std::string> motif_flags;         // fibrous, layered, gradient, smoothed, thin_shell
    std::vector<std::string> free_terms;

    bool is_composite() const { return !single_class.has_value(); }
    std::string target_class_name() const {
        return single_class ? to_string(*single_class) : "composite";
    }
    bool underspecified() const {
        return detected_classes.empty() && numeric_params.empty() && motif_flags.empty();
    }
};

IntentSpec parse_intent(const std::string& prompt, const WordBanks& banks);

// Deterministic program synthesis from an intent. Defaults fill anything the
// intent left open; explicit values are clamped into schema range and the
// tubular layout is auto-sized so the result always parses and compiles.
DesignProgram program_from_intent(const IntentSpec& intent, uint64_t seed);

// Lowercased word/number tokens; "3x3" splits into "3","x","3".
std::vector<std::string> tokenize_prompt(const std::string& text);

} // namespace bioforge::dsl
