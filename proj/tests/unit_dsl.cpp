#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bioforge/dsl/format.hpp"
#include "bioforge/dsl/intent.hpp"
#include "bioforge/dsl/parse.hpp"
#include "bioforge/dsl/schema.hpp"
#include "bioforge/dsl/word_banks.hpp"
#include "bioforge/geom/compile.hpp"
#include "bioforge/geom/rng.hpp"

using namespace bioforge;
using namespace bioforge::dsl;
using geom::Rng;

namespace {

// Random schema-valid program, the generator behind the round-trip oracle.
DesignProgram random_program(Rng& rng) {
    DesignProgram p;
    p.name = "p" + std::to_string(rng.next_below(1000));
    p.seed = rng.next_u64() % 100000;
    int blocks = 1 + static_cast<int>(rng.next_below(3));
    for (int b = 0; b < blocks; ++b) {
        Block blk;
        blk.kind = static_cast<BlockKind>(rng.next_below(5));
        const BlockSchema& schema = schema_for(blk.kind);
        for (const auto& spec : schema.params) {
            if (rng.next_double() < 0.45) continue; // leave some at defaults
            if (spec.type == ParamType::word) {
                blk.params[spec.name] = spec.words[rng.next_below(spec.words.size())];
            } else if (spec.type == ParamType::integer) {
                double v = std::floor(rng.uniform(spec.min, spec.max + 1));
                blk.params[spec.name] = std::min(v, spec.max);
            } else {
                double lo = spec.min_exclusive ? spec.min + 0.01 * (spec.max - spec.min) : spec.min;
                blk.params[spec.name] = rng.uniform(lo, spec.max);
            }
        }
        if (rng.next_double() < 0.4) {
            for (auto kind : {Modifier::Kind::gradient, Modifier::Kind::sandwich,
                              Modifier::Kind::smooth, Modifier::Kind::noise}) {
                if (!schema.allows_modifier(kind) || rng.next_double() < 0.6) continue;
                Modifier m;
                m.kind = kind;
                switch (kind) {
                    case Modifier::Kind::gradient:
                        m.axis = static_cast<Axis>(rng.next_below(3));
                        m.value = rng.uniform(0.2, 5.0);
                        break;
                    case Modifier::Kind::sandwich: m.value = rng.uniform(0.0, 3.0); break;
                    case Modifier::Kind::smooth: m.value = static_cast<double>(rng.next_below(4)); break;
                    case Modifier::Kind::noise: m.value = rng.uniform(0.0, 20.0); break;
                }
                blk.modifiers.push_back(m);
            }
        }
        p.blocks.push_back(std::move(blk));
    }
    return p;
}

} // namespace

TEST_CASE("grammar instance from the language reference") {
    auto r = parse("design d { seed 7 helical { plies 8 thickness 0.5 rotation_deg 16 } }");
    REQUIRE(ok(r));
    const DesignProgram& p = program(r);
    CHECK(p.name == "d");
    CHECK(p.seed == 7);
    REQUIRE(p.blocks.size() == 1);
    CHECK(p.blocks[0].kind == BlockKind::helical);
    CHECK(std::get<double>(p.blocks[0].params.at("plies")) == 8.0);
    // alias normalizes to the canonical key
    CHECK(std::get<double>(p.blocks[0].params.at("ply_thickness")) == 0.5);
}

TEST_CASE("unknown block kind is an UnknownKeyword error with position") {
    auto r = parse("design d { helicle { } }");
    REQUIRE_FALSE(ok(r));
    CHECK(error(r).error_code == ParseErrorCode::UnknownKeyword);
    CHECK(error(r).line == 1);
    CHECK(error(r).token == "helicle");
}

TEST_CASE("empty input yields Empty") {
    for (const char* src : {"", "   \n\t ", "# only a comment\n"}) {
        auto r = parse(src);
        REQUIRE_FALSE(ok(r));
        CHECK(error(r).error_code == ParseErrorCode::Empty);
    }
}

TEST_CASE("errors carry stable codes") {
    struct Case { const char* src; ParseErrorCode code; };
    const Case cases[] = {
        {"design d { helical { plies 99 } }", ParseErrorCode::ValueOutOfRange},
        {"design d { helical { plies 8.5 } }", ParseErrorCode::ValueOutOfRange},
        {"design d { helical { plies 8 }", ParseErrorCode::UnbalancedBrace},
        {"design d { helical { plies 8 } } }", ParseErrorCode::UnbalancedBrace},
        {"design d { helical { spacing 2 } }", ParseErrorCode::UnknownKeyword},
        {"design d { helical { plies plies 8 } }", ParseErrorCode::UnexpectedToken},
        {"design d { tubular { gradient w 2 } }", ParseErrorCode::UnexpectedToken},
        {"design d { helical { gradient z 2 } }", ParseErrorCode::UnknownKeyword},
        {"design d { }", ParseErrorCode::UnexpectedToken},
        {"blueprint d { helical { } }", ParseErrorCode::UnknownKeyword},
        {"design d { helical { fiber_profile wedge } }", ParseErrorCode::UnknownKeyword},
        {"design d { seed -4 helical { } }", ParseErrorCode::ValueOutOfRange},
    };
    for (const auto& c : cases) {
        auto r = parse(c.src);
        REQUIRE_FALSE(ok(r));
        CHECK_MESSAGE(error(r).error_code == c.code,
                      c.src << " -> " << to_string(error(r).error_code));
    }
}

TEST_CASE("comments and whitespace are free-form") {
    auto r = parse("design d {\n  # a comment\n  seed 3\n  cellular {\n"
                   "    region_count 9 # trailing\n  }\n}\n");
    REQUIRE(ok(r));
    CHECK(program(r).seed == 3);
}

TEST_CASE("format prints each key once and is idempotent") {
    auto r = parse("design d { seed 7 helical { plies 8 } }");
    REQUIRE(ok(r));
    std::string text = format(program(r));
    size_t first = text.find("plies 8");
    CHECK(first != std::string::npos);
    CHECK(text.find("plies 8", first + 1) == std::string::npos);

    auto r2 = parse(text);
    REQUIRE(ok(r2));
    CHECK(format(program(r2)) == text);
}

TEST_CASE("construction order does not leak into the canonical form") {
    Block a;
    a.kind = BlockKind::helical;
    a.set("plies", 8.0);
    a.set("rotation_deg", 20.0);
    Block b;
    b.kind = BlockKind::helical;
    b.set("rotation_deg", 20.0);
    b.set("plies", 8.0);
    DesignProgram p1, p2;
    p1.blocks.push_back(a);
    p2.blocks.push_back(b);
    CHECK(p1 == p2);
    CHECK(format(p1) == format(p2));

    // sorted-key serialization oracle: canonical text lists keys in a fixed
    // order independent of insertion
    std::string text = format(p1);
    CHECK(text.find("plies") < text.find("rotation_deg"));
}

TEST_CASE("round-trip: parse(format(P)) == P over 500 random programs") {
    Rng rng(2024);
    for (int i = 0; i < 500; ++i) {
        DesignProgram p = random_program(rng);
        std::string text = format(p);
        auto r = parse(text);
        REQUIRE_MESSAGE(ok(r), text);
        CHECK(program(r) == p);
        CHECK(format(program(r)) == text);
    }
}

TEST_CASE("single-character corruption reports a position inside the statement") {
    Rng rng(55);
    int parse_fails = 0;
    for (int i = 0; i < 300; ++i) {
        DesignProgram p = random_program(rng);
        std::string text = format(p);
        size_t pos = rng.next_below(text.size());
        if (text[pos] == '\n') continue;
        std::string corrupted = text;
        const char* alphabet = "abcz0189{}._ ";
        char repl = alphabet[rng.next_below(13)];
        if (repl == corrupted[pos]) continue;
        corrupted[pos] = repl;
        auto r = parse(corrupted);
        if (ok(r)) continue;
        ++parse_fails;
        // the error must not point before the corrupted line
        int corrupted_line = 1;
        for (size_t k = 0; k < pos; ++k) {
            if (corrupted[k] == '\n') ++corrupted_line;
        }
        CHECK(error(r).line >= 1);
        CHECK_MESSAGE(error(r).line <= corrupted_line + 1,
                      "err line " << error(r).line << " corruption line " << corrupted_line
                                  << "\n" << corrupted);
    }
    CHECK(parse_fails > 50);
}

TEST_CASE("word banks validate and round-trip through json") {
    const WordBanks& b = WordBanks::builtin();
    CHECK_NOTHROW(b.validate());
    std::string j = b.to_json();
    WordBanks b2 = WordBanks::from_json(j);
    CHECK(b2.motif_bank == b.motif_bank);
    CHECK(b2.templates == b.templates);
    CHECK(b2.verbs == b.verbs);

    WordBanks broken = b;
    broken.motif_bank["helical"] = {"just one"};
    CHECK_THROWS(broken.validate());
}

TEST_CASE("intent: helical phrase from the instruction corpus") {
    auto intent = parse_intent("generate a Blender script that builds a helical twisted ply structure",
                               WordBanks::builtin());
    REQUIRE(intent.single_class.has_value());
    CHECK(*intent.single_class == BlockKind::helical);
}

TEST_CASE("intent: tubular slab with count and gradient flag") {
    auto intent = parse_intent(
        "Write a Blender script to make a tubular slab with 8 tubules and gradient porosity",
        WordBanks::builtin());
    REQUIRE(intent.single_class.has_value());
    CHECK(*intent.single_class == BlockKind::tubular);
    REQUIRE(intent.numeric_params.count("tubule_count"));
    CHECK(intent.numeric_params.at("tubule_count") == 8.0);
    CHECK(intent.motif_flags.count("gradient") == 1);
}

TEST_CASE("intent: unknown prompt degrades to composite") {
    auto intent = parse_intent("draw me a castle with turrets", WordBanks::builtin());
    CHECK(intent.is_composite());
    CHECK(intent.detected_classes.empty());
    CHECK_FALSE(intent.free_terms.empty());
}

TEST_CASE("intent: case-insensitive and synonym-closed") {
    const WordBanks& banks = WordBanks::builtin();
    for (const auto& [cls, phrases] : banks.motif_bank) {
        BlockKind kind;
        REQUIRE(block_kind_from_string(cls, kind));
        for (const auto& phrase : phrases) {
            std::string upper = phrase;
            for (auto& ch : upper) ch = static_cast<char>(std::toupper(ch));
            auto intent = parse_intent("Write a Blender script to make a " + upper,
                                       WordBanks::builtin());
            REQUIRE_MESSAGE(!intent.detected_classes.empty(), phrase);
            CHECK_MESSAGE(intent.detected_classes.front() == kind, phrase);
        }
    }
}

TEST_CASE("intent: grid pattern binds both dimensions") {
    auto intent = parse_intent(
        "Write Blender Python script that constructs a 3x3 grid of cubes each rotated 5 degrees",
        WordBanks::builtin());
    CHECK(intent.numeric_params.at("grid_x") == 3.0);
    CHECK(intent.numeric_params.at("grid_y") == 3.0);
    REQUIRE(intent.single_class.has_value());
    CHECK(*intent.single_class == BlockKind::primitive);
    CHECK(intent.numeric_params.at("rotate_z") == 5.0);
}

TEST_CASE("program_from_intent fills defaults and honors explicit params") {
    IntentSpec intent;
    intent.single_class = BlockKind::helical;
    intent.detected_classes = {BlockKind::helical};
    intent.numeric_params["plies"] = 8.0;
    intent.param_class["plies"] = BlockKind::helical;
    DesignProgram p = program_from_intent(intent, 9);
    REQUIRE(p.blocks.size() == 1);
    CHECK(p.seed == 9);
    CHECK(std::get<double>(p.blocks[0].params.at("plies")) == 8.0);
    CHECK(p.blocks[0].params.count("rotation_deg") == 0); // default left implicit
    CHECK(resolved_param(p.blocks[0], "rotation_deg") == 16.0);
}

TEST_CASE("program_from_intent: gradient flag becomes a tubular modifier") {
    IntentSpec intent;
    intent.single_class = BlockKind::tubular;
    intent.detected_classes = {BlockKind::tubular};
    intent.motif_flags.insert("gradient");
    DesignProgram p = program_from_intent(intent, 0);
    REQUIRE(p.blocks.size() == 1);
    REQUIRE(p.blocks[0].modifiers.size() == 1);
    CHECK(p.blocks[0].modifiers[0].kind == Modifier::Kind::gradient);
}

TEST_CASE("program_from_intent output always parses and compiles") {
    Rng rng(7);
    const WordBanks& banks = WordBanks::builtin();
    std::vector<std::string> prompts = {
        "make a helical twisted ply structure with 24 plies",
        "tubular slab with 300 tubules",
        "a porous cellular core with 180 regions",
        "helicoidal laminate with 0 plies", // clamped to range
        "a tubular array with 12 tubules and 2.5 mm radius tubules",
        "gibberish prompt about nothing",
        "a cellular sandwich panel with thin shells",
        "combine a helical twisted ply structure with a tubular slab",
    };
    for (const auto& prompt : prompts) {
        IntentSpec intent = parse_intent(prompt, banks);
        DesignProgram p = program_from_intent(intent, rng.next_u64());
        std::string text = format(p);
        auto parsed = parse(text);
        REQUIRE_MESSAGE(ok(parsed), prompt << "\n" << text);
        auto compiled = geom::compile_program(program(parsed));
        REQUIRE_MESSAGE(geom::ok(compiled), prompt << "\n" << text << "\n"
                                                   << geom::error(compiled).message);
    }
}

TEST_CASE("program_from_intent is deterministic") {
    const WordBanks& banks = WordBanks::builtin();
    auto intent = parse_intent("make a tubular slab with 40 tubules", banks);
    std::string a = format(program_from_intent(intent, 77));
    std::string b = format(program_from_intent(intent, 77));
    CHECK(a == b);
}
