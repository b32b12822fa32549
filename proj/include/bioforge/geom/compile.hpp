#pragma once

#include <string>
#include <variant>

#include "bioforge/dsl/ast.hpp"
#include "bioforge/exec.hpp"
#include "bioforge/geom/errors.hpp"
#include "bioforge/geom/scene.hpp"

namespace bioforge::geom {

struct CompileError {
    GeomErrorCode code = GeomErrorCode::ValueOutOfRange;
    std::string message;
    int block_index = -1;
    std::string param;       // parameter a repair should adjust, if known
    double suggested = 0.0;
    bool has_suggestion = false;
};

using CompileResult = std::variant<Scene, CompileError>;

// One generator invocation per block, seeded from (program seed, block
// index); modifiers apply in declared order. Parallel and serial block
// compilation produce identical scenes.
CompileResult compile_program(const dsl::DesignProgram& program, Exec exec = Exec::parallel);

inline bool ok(const CompileResult& r) { return std::holds_alternative<Scene>(r); }
inline const Scene& scene(const CompileResult& r) { return std::get<Scene>(r); }
inline const CompileError& error(const CompileResult& r) { return std::get<CompileError>(r); }

} // namespace bioforge::geom
