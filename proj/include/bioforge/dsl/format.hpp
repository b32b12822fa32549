#pragma once

#include <string>

#include "bioforge/dsl/ast.hpp"

namespace bioforge::dsl {

// Canonical pretty-print: two-space indent, one statement per line,
// parameters in schema order, modifiers in declared order. format is a fixed
// point: format(parse(format(p))) == format(p).
std::string format(const DesignProgram& p);

// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double v);

} // namespace bioforge::dsl
