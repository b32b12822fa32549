#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bioforge/dsl/ast.hpp"

namespace bioforge::dsl {

enum class ParseErrorCode {
    UnknownKeyword,
    UnexpectedToken,
    UnbalancedBrace,
    ValueOutOfRange,
    Empty,
};

const char* to_string(ParseErrorCode c);

// Error codes are stable across releases; the repair agent keys on them.
// token/expected/candidates/clamp_hint exist for the repair rules and are
// not part of the serialized surface.
struct ParseError {
    ParseErrorCode error_code = ParseErrorCode::Empty;
    std::string message;
    int line = 1;
    int column = 1;
    std::string token;
    std::string expected;
    std::vector<std::string> candidates;
    std::string clamp_hint;
};

using ParseResult = std::variant<DesignProgram, ParseError>;

// Parses BGS source. On failure returns the earliest error with a 1-based
// source position.
ParseResult parse(std::string_view source);

inline bool ok(const ParseResult& r) { return std::holds_alternative<DesignProgram>(r); }
inline const DesignProgram& program(const ParseResult& r) { return std::get<DesignProgram>(r); }
inline const ParseError& error(const ParseResult& r) { return std::get<ParseError>(r); }

} // namespace bioforge::dsl
