#include "bioforge/dsl/format.hpp"

#include <charconv>
#include <cmath>

#include "bioforge/dsl/schema.hpp"

namespace bioforge::dsl {

std::string format_number(double v) {
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        auto r = std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(v));
        return std::string(buf, r.ptr);
    }
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

std::string format(const DesignProgram& p) {
    std::string out;
    out += "design " + p.name + " {\n";
    out += "  seed " + std::to_string(p.seed) + "\n";
    for (const auto& b : p.blocks) {
        out += std::string("  ") + to_string(b.kind) + " {\n";
        const BlockSchema& schema = schema_for(b.kind);
        for (const auto& spec : schema.params) {
            auto it = b.params.find(spec.name);
            if (it == b.params.end()) continue;
            out += "    " + spec.name + " ";
            if (const double* d = std::get_if<double>(&it->second)) {
                out += format_number(*d);
            } else {
                out += std::get<std::string>(it->second);
            }
            out += "\n";
        }
        for (const auto& m : b.modifiers) {
            out += std::string("    ") + to_string(m.kind);
            if (m.kind == Modifier::Kind::gradient) {
                out += std::string(" ") + to_string(m.axis);
            }
            out += " " + format_number(m.value) + "\n";
        }
        out += "  }\n";
    }
    out += "}\n";
    return out;
}

} // namespace bioforge::dsl
