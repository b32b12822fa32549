#include "bioforge/dsl/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "bioforge/dsl/format.hpp"
#include "bioforge/dsl/schema.hpp"

namespace bioforge::dsl {

const char* to_string(ParseErrorCode c) {
    switch (c) {
        case ParseErrorCode::UnknownKeyword: return "UnknownKeyword";
        case ParseErrorCode::UnexpectedToken: return "UnexpectedToken";
        case ParseErrorCode::UnbalancedBrace: return "UnbalancedBrace";
        case ParseErrorCode::ValueOutOfRange: return "ValueOutOfRange";
        case ParseErrorCode::Empty: return "Empty";
    }
    return "?";
}

namespace {

enum class TokKind { Ident, Number, LBrace, RBrace, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

struct Lexer {
    std::string_view src;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    void advance(size_t n) {
        for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
            if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
        }
    }

    void skip_ws_and_comments() {
        while (pos < src.size()) {
            char c = src[pos];
            if (c == '#') {
                while (pos < src.size() && src[pos] != '\n') advance(1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    Token next(bool* bad_char = nullptr) {
        skip_ws_and_comments();
        Token t;
        t.line = line;
        t.column = col;
        if (pos >= src.size()) { t.kind = TokKind::End; return t; }
        char c = src[pos];
        if (c == '{') { t.kind = TokKind::LBrace; t.text = "{"; advance(1); return t; }
        if (c == '}') { t.kind = TokKind::RBrace; t.text = "}"; advance(1); return t; }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                advance(1);
            t.kind = TokKind::Ident;
            t.text = std::string(src.substr(start, pos - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            size_t start = pos;
            if (c == '-') advance(1);
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                advance(1);
            if (pos + 1 < src.size() && src[pos] == '.' &&
                std::isdigit(static_cast<unsigned char>(src[pos + 1]))) {
                advance(1);
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                    advance(1);
            }
            if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
                size_t save_pos = pos;
                int save_line = line, save_col = col;
                advance(1);
                if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) advance(1);
                if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                        advance(1);
                } else {
                    pos = save_pos; line = save_line; col = save_col;
                }
            }
            t.kind = TokKind::Number;
            t.text = std::string(src.substr(start, pos - start));
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
            return t;
        }
        // Unknown character: return it as a one-char token so the error
        // position lands on it.
        if (bad_char) *bad_char = true;
        t.kind = TokKind::Ident;
        t.text = std::string(1, c);
        advance(1);
        return t;
    }
};

struct Parser {
    Lexer lex;
    Token cur;
    ParseError err;
    bool failed = false;

    explicit Parser(std::string_view src) : lex{src} { cur = lex.next(); }

    void bump() { cur = lex.next(); }

    ParseError make(ParseErrorCode code, const Token& at, std::string msg,
                    std::string expected = {}, std::vector<std::string> cand = {}) {
        ParseError e;
        e.error_code = code;
        e.message = std::move(msg);
        e.line = at.line;
        e.column = at.column;
        e.token = at.text;
        e.expected = std::move(expected);
        e.candidates = std::move(cand);
        return e;
    }

    bool fail(ParseError e) {
        if (!failed) { err = std::move(e); failed = true; }
        return false;
    }

    bool expect_lbrace(const char* what) {
        if (cur.kind != TokKind::LBrace) {
            return fail(make(ParseErrorCode::UnexpectedToken, cur,
                             std::string("expected '{' to open ") + what, "{"));
        }
        bump();
        return true;
    }

    bool parse_seed(DesignProgram& p, const Token& kw) {
        if (cur.kind != TokKind::Number) {
            return fail(make(ParseErrorCode::UnexpectedToken, kw,
                             "expected a number after 'seed'", "number"));
        }
        const std::string& txt = cur.text;
        bool integral = !txt.empty() && txt.find('.') == std::string::npos &&
                        txt.find('e') == std::string::npos &&
                        txt.find('E') == std::string::npos && txt[0] != '-';
        if (!integral) {
            ParseError e = make(ParseErrorCode::ValueOutOfRange, cur,
                                "seed must be a nonnegative integer");
            e.clamp_hint = "0";
            return fail(std::move(e));
        }
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(txt.c_str(), &end, 10);
        if (errno == ERANGE) {
            ParseError e = make(ParseErrorCode::ValueOutOfRange, cur, "seed does not fit in 64 bits");
            e.clamp_hint = "0";
            return fail(std::move(e));
        }
        p.seed = static_cast<uint64_t>(v);
        bump();
        return true;
    }

    bool parse_modifier(Block& b, const Token& name_tok) {
        Modifier m;
        if (name_tok.text == "gradient") m.kind = Modifier::Kind::gradient;
        else if (name_tok.text == "sandwich") m.kind = Modifier::Kind::sandwich;
        else if (name_tok.text == "smooth") m.kind = Modifier::Kind::smooth;
        else m.kind = Modifier::Kind::noise;

        const BlockSchema& schema = schema_for(b.kind);
        if (!schema.allows_modifier(m.kind)) {
            std::vector<std::string> cand;
            for (auto k : {Modifier::Kind::gradient, Modifier::Kind::sandwich,
                           Modifier::Kind::smooth, Modifier::Kind::noise}) {
                if (schema.allows_modifier(k)) cand.push_back(to_string(k));
            }
            for (const auto& ps : schema.params) cand.push_back(ps.name);
            return fail(make(ParseErrorCode::UnknownKeyword, name_tok,
                             std::string("modifier '") + name_tok.text + "' is not valid in a '" +
                                 to_string(b.kind) + "' block",
                             "modifier valid for this block", std::move(cand)));
        }

        if (m.kind == Modifier::Kind::gradient) {
            if (cur.kind != TokKind::Ident ||
                (cur.text != "x" && cur.text != "y" && cur.text != "z")) {
                return fail(make(ParseErrorCode::UnexpectedToken,
                                 cur.kind == TokKind::End ? name_tok : cur,
                                 "gradient needs an axis (x, y or z)", "axis",
                                 {"x", "y", "z"}));
            }
            m.axis = cur.text == "x" ? Axis::x : (cur.text == "y" ? Axis::y : Axis::z);
            bump();
        }

        if (cur.kind != TokKind::Number) {
            return fail(make(ParseErrorCode::UnexpectedToken, name_tok,
                             std::string("expected a number after '") + name_tok.text + "'",
                             "number"));
        }
        m.value = cur.number;
        if (!modifier_value_ok(m.kind, m.value)) {
            ParseError e = make(ParseErrorCode::ValueOutOfRange, cur,
                                std::string("value out of range for modifier '") +
                                    to_string(m.kind) + "'");
            e.clamp_hint = format_number(modifier_clamp(m.kind, m.value));
            return fail(std::move(e));
        }
        bump();
        b.modifiers.push_back(m);
        return true;
    }

    bool parse_param(Block& b, const Token& name_tok, const ParamSpec& spec) {
        if (b.params.count(spec.name)) {
            return fail(make(ParseErrorCode::UnexpectedToken, name_tok,
                             std::string("duplicate parameter '") + spec.name + "'",
                             "unique parameter"));
        }
        if (spec.type == ParamType::word) {
            if (cur.kind != TokKind::Ident) {
                return fail(make(ParseErrorCode::UnexpectedToken, name_tok,
                                 std::string("expected a word value for '") + spec.name + "'",
                                 "word", spec.words));
            }
            bool known = false;
            for (const auto& w : spec.words) known = known || (w == cur.text);
            if (!known) {
                return fail(make(ParseErrorCode::UnknownKeyword, cur,
                                 std::string("'") + cur.text + "' is not a valid value for '" +
                                     spec.name + "'",
                                 "word value", spec.words));
            }
            b.params[spec.name] = cur.text;
            bump();
            return true;
        }
        if (cur.kind != TokKind::Number) {
            return fail(make(ParseErrorCode::UnexpectedToken, name_tok,
                             std::string("expected a number after '") + name_tok.text + "'",
                             "number"));
        }
        double v = cur.number;
        bool integral_ok = spec.type != ParamType::integer || v == std::floor(v);
        if (!spec.in_range(v) || !integral_ok) {
            ParseError e = make(ParseErrorCode::ValueOutOfRange, cur,
                                std::string("value ") + cur.text + " out of range for '" +
                                    spec.name + "'");
            e.clamp_hint = format_number(spec.clamp(v));
            return fail(std::move(e));
        }
        b.params[spec.name] = v;
        bump();
        return true;
    }

    bool parse_block(DesignProgram& p, const Token& kind_tok) {
        Block b;
        block_kind_from_string(kind_tok.text, b.kind);
        if (!expect_lbrace("the block")) return false;
        const BlockSchema& schema = schema_for(b.kind);
        while (cur.kind != TokKind::RBrace) {
            if (cur.kind == TokKind::End) {
                return fail(make(ParseErrorCode::UnbalancedBrace, cur,
                                 "missing '}' before end of input", "}"));
            }
            if (cur.kind != TokKind::Ident) {
                return fail(make(ParseErrorCode::UnexpectedToken, cur,
                                 "expected a parameter or modifier name",
                                 "parameter or modifier"));
            }
            Token name_tok = cur;
            bump();
            if (name_tok.text == "gradient" || name_tok.text == "sandwich" ||
                name_tok.text == "smooth" || name_tok.text == "noise") {
                if (!parse_modifier(b, name_tok)) return false;
                continue;
            }
            const ParamSpec* spec = schema.find(name_tok.text);
            if (!spec) {
                std::vector<std::string> cand;
                for (const auto& ps : schema.params) cand.push_back(ps.name);
                for (auto k : {Modifier::Kind::gradient, Modifier::Kind::sandwich,
                               Modifier::Kind::smooth, Modifier::Kind::noise}) {
                    if (schema.allows_modifier(k)) cand.push_back(to_string(k));
                }
                return fail(make(ParseErrorCode::UnknownKeyword, name_tok,
                                 std::string("unknown parameter '") + name_tok.text +
                                     "' in a '" + to_string(b.kind) + "' block",
                                 "parameter name", std::move(cand)));
            }
            if (!parse_param(b, name_tok, *spec)) return false;
        }
        bump(); // consume '}'
        p.blocks.push_back(std::move(b));
        return true;
    }

    ParseResult run() {
        if (cur.kind == TokKind::End) {
            ParseError e;
            e.error_code = ParseErrorCode::Empty;
            e.message = "empty input";
            return e;
        }
        DesignProgram p;
        if (cur.kind != TokKind::Ident || cur.text != "design") {
            fail(make(ParseErrorCode::UnknownKeyword, cur, "a program starts with 'design'",
                      "design", {"design"}));
            return err;
        }
        bump();
        if (cur.kind != TokKind::Ident) {
            fail(make(ParseErrorCode::UnexpectedToken, cur, "expected a design name",
                      "identifier"));
            return err;
        }
        p.name = cur.text;
        bump();
        if (!expect_lbrace("the design")) return err;

        bool seen_seed = false;
        while (cur.kind != TokKind::RBrace) {
            if (cur.kind == TokKind::End) {
                fail(make(ParseErrorCode::UnbalancedBrace, cur,
                          "missing '}' before end of input", "}"));
                return err;
            }
            if (cur.kind != TokKind::Ident) {
                fail(make(ParseErrorCode::UnexpectedToken, cur,
                          "expected 'seed' or a block kind", "block kind"));
                return err;
            }
            Token tok = cur;
            if (tok.text == "seed") {
                if (seen_seed || !p.blocks.empty()) {
                    fail(make(ParseErrorCode::UnexpectedToken, tok,
                              "'seed' must appear once, before the first block",
                              "block kind"));
                    return err;
                }
                bump();
                if (!parse_seed(p, tok)) return err;
                seen_seed = true;
                continue;
            }
            BlockKind k;
            if (!block_kind_from_string(tok.text, k)) {
                fail(make(ParseErrorCode::UnknownKeyword, tok,
                          std::string("unknown block kind '") + tok.text + "'", "block kind",
                          {"helical", "cellular", "tubular", "slab", "primitive"}));
                return err;
            }
            bump();
            if (!parse_block(p, tok)) return err;
        }
        Token close = cur;
        bump();
        if (cur.kind != TokKind::End) {
            if (cur.kind == TokKind::RBrace) {
                fail(make(ParseErrorCode::UnbalancedBrace, cur, "extra '}'", ""));
            } else {
                fail(make(ParseErrorCode::UnexpectedToken, cur,
                          "trailing input after the design block", "end of input"));
            }
            return err;
        }
        if (p.blocks.empty()) {
            fail(make(ParseErrorCode::UnexpectedToken, close,
                      "a design needs at least one block", "block kind",
                      {"helical", "cellular", "tubular", "slab", "primitive"}));
            return err;
        }
        return p;
    }
};

} // namespace

ParseResult parse(std::string_view source) {
    Parser p(source);
    return p.run();
}

} // namespace bioforge::dsl
