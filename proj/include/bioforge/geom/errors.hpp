#pragma once

#include <stdexcept>
#include <string>

namespace bioforge::geom {

enum class GeomErrorCode {
    ValueOutOfRange,
    TubuleOverlap,
    TubuleOutsideCortex,
    DuplicateSeeds,
    DegenerateCell,
    NotManifold,
    HoleOverlap,
    HoleOutsideOuter,
    SelfIntersectingProfile,
    EmptyScene,
};

const char* to_string(GeomErrorCode c);

// Thrown by the kernel builders. compile_program converts it into a
// CompileError value so the agent loop can key on the code.
class GeomError : public std::runtime_error {
public:
    GeomError(GeomErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    GeomError(GeomErrorCode code, const std::string& msg, const std::string& param,
              double suggested)
        : std::runtime_error(msg), code_(code), param_(param), suggested_(suggested),
          has_suggestion_(true) {}

    GeomErrorCode code() const { return code_; }
    const std::string& param() const { return param_; }
    bool has_suggestion() const { return has_suggestion_; }
    double suggested() const { return suggested_; }

private:
    GeomErrorCode code_;
    std::string param_;
    double suggested_ = 0.0;
    bool has_suggestion_ = false;
};

} // namespace bioforge::geom
