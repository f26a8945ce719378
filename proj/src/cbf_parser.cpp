// CBF-subset reader.  The format is whitespace-delimited ASCII: keywords
// (VER, OBJSENSE, VAR, INT, CON, OBJACOORD, ACOORD, BCOORD) followed by
// their data tokens, with `#` starting a comment that runs to end of line.
// Keyword/data may share lines or be split across them; errors carry the
// 1-based line of the offending token.

#include "coniccut/instance.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace coniccut {

const char* cbf_cone_tag(CbfCone cone) {
    switch (cone) {
        case CbfCone::Free: return "F";
        case CbfCone::NonNeg: return "L+";
        case CbfCone::NonPos: return "L-";
        case CbfCone::Zero: return "L=";
        case CbfCone::Quad: return "Q";
        case CbfCone::RotatedQuad: return "QR";
    }
    return "?";
}

namespace {

struct Token {
    std::string text;
    int line = 0;
};

// Splits the stream into whitespace-delimited tokens, stripping `#`
// comments and tracking 1-based line numbers.
class Lexer {
  public:
    explicit Lexer(std::istream& in) : in_(in) {}

    std::optional<Token> next() {
        if (pending_) {
            auto t = std::move(*pending_);
            pending_.reset();
            return t;
        }
        return scan();
    }

    const Token* peek() {
        if (!pending_) pending_ = scan();
        return pending_ ? &*pending_ : nullptr;
    }

    int last_line() const { return last_line_; }

  private:
    std::optional<Token> scan() {
        while (true) {
            if (pos_ >= line_.size()) {
                if (!std::getline(in_, line_)) return std::nullopt;
                ++line_no_;
                pos_ = 0;
                continue;
            }
            char c = line_[pos_];
            if (c == '#') {  // comment: drop the rest of the line
                pos_ = line_.size();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                continue;
            }
            std::size_t start = pos_;
            while (pos_ < line_.size() && line_[pos_] != '#' &&
                   !std::isspace(static_cast<unsigned char>(line_[pos_]))) {
                ++pos_;
            }
            last_line_ = line_no_;
            return Token{line_.substr(start, pos_ - start), line_no_};
        }
    }

    std::istream& in_;
    std::string line_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
    int last_line_ = 0;
    std::optional<Token> pending_;
};

[[noreturn]] void fail(const Token& at, const std::string& message) {
    throw ParseError(at.line, message);
}

Token require_token(Lexer& lex, const std::string& what) {
    auto t = lex.next();
    if (!t) {
        throw ParseError(lex.last_line() == 0 ? 1 : lex.last_line(),
                         "unexpected end of document, expected " + what);
    }
    return *t;
}

long long parse_integer(const Token& t, const std::string& what) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(t.text, &used);
    } catch (const std::exception&) {
        fail(t, "expected " + what + ", got '" + t.text + "'");
    }
    if (used != t.text.size()) {
        fail(t, "expected " + what + ", got '" + t.text + "'");
    }
    return value;
}

int require_int(Lexer& lex, const std::string& what) {
    Token t = require_token(lex, what);
    long long v = parse_integer(t, what);
    if (v < INT32_MIN || v > INT32_MAX) fail(t, what + " out of range");
    return static_cast<int>(v);
}

double require_double(Lexer& lex, const std::string& what) {
    Token t = require_token(lex, what);
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(t.text, &used);
    } catch (const std::exception&) {
        fail(t, "expected " + what + ", got '" + t.text + "'");
    }
    if (used != t.text.size()) {
        fail(t, "expected " + what + ", got '" + t.text + "'");
    }
    return value;
}

CbfCone parse_cone_tag(const Token& t) {
    if (t.text == "F") return CbfCone::Free;
    if (t.text == "L+") return CbfCone::NonNeg;
    if (t.text == "L-") return CbfCone::NonPos;
    if (t.text == "L=") return CbfCone::Zero;
    if (t.text == "Q") return CbfCone::Quad;
    if (t.text == "QR") return CbfCone::RotatedQuad;
    if (t.text == "EXP" || t.text == "EXP*") {
        fail(t, "unsupported cone tag '" + t.text +
                    "' (exponential cones are out of scope)");
    }
    fail(t, "unsupported cone tag '" + t.text + "'");
}

// Reads "<total> <nblocks>" followed by nblocks "TAG dim" pairs whose
// dims must sum to total.
void parse_block_list(Lexer& lex, const char* section, int& total,
                      std::vector<RawBlock>& blocks) {
    Token header = require_token(lex, std::string(section) + " dimensions");
    total = static_cast<int>(
        parse_integer(header, std::string(section) + " total dimension"));
    if (total < 0) fail(header, std::string(section) + " dimension is negative");
    int nblocks = require_int(lex, std::string(section) + " block count");
    if (nblocks < 0) fail(header, std::string(section) + " block count is negative");

    long long seen = 0;
    blocks.reserve(static_cast<std::size_t>(nblocks));
    for (int k = 0; k < nblocks; ++k) {
        Token tag = require_token(lex, "cone tag");
        CbfCone cone = parse_cone_tag(tag);
        int dim = require_int(lex, "cone dimension");
        if (dim < 1) fail(tag, "cone dimension must be positive");
        if (cone == CbfCone::Quad && dim < 2) {
            fail(tag, "Q cone needs dimension >= 2");
        }
        if (cone == CbfCone::RotatedQuad && dim < 3) {
            fail(tag, "QR cone needs dimension >= 3");
        }
        blocks.push_back(RawBlock{cone, dim});
        seen += dim;
    }
    if (seen != total) {
        fail(header, std::string(section) + " block dimensions sum to " +
                         std::to_string(seen) + ", expected " +
                         std::to_string(total));
    }
}

}  // namespace

RawInstance parse_cbf(std::istream& in) {
    Lexer lex(in);
    RawInstance raw;

    bool saw_ver = false, saw_objsense = false, saw_var = false,
         saw_int = false, saw_con = false, saw_objacoord = false,
         saw_acoord = false, saw_bcoord = false;

    Token first = require_token(lex, "VER header");
    if (first.text != "VER") {
        fail(first, "document must start with VER, got '" + first.text + "'");
    }
    {
        Token v = require_token(lex, "format version");
        long long version = parse_integer(v, "format version");
        if (version < 1) fail(v, "format version must be a positive integer");
        saw_ver = true;
    }

    while (auto t = lex.next()) {
        const std::string& kw = t->text;
        if (kw == "VER") {
            fail(*t, "duplicate VER section");
        } else if (kw == "OBJSENSE") {
            if (saw_objsense) fail(*t, "duplicate OBJSENSE section");
            saw_objsense = true;
            Token s = require_token(lex, "objective sense");
            if (s.text == "MIN") {
                raw.sense = ObjectiveSense::Minimize;
            } else if (s.text == "MAX") {
                raw.sense = ObjectiveSense::Maximize;
            } else {
                fail(s, "objective sense must be MIN or MAX, got '" + s.text +
                            "'");
            }
        } else if (kw == "VAR") {
            if (saw_var) fail(*t, "duplicate VAR section");
            saw_var = true;
            parse_block_list(lex, "VAR", raw.num_vars, raw.var_blocks);
        } else if (kw == "INT") {
            if (saw_int) fail(*t, "duplicate INT section");
            if (!saw_var) fail(*t, "INT section requires a preceding VAR section");
            saw_int = true;
            int count = require_int(lex, "integer count");
            if (count < 0) fail(*t, "integer count is negative");
            std::unordered_set<int> seen;
            for (int k = 0; k < count; ++k) {
                Token idx = require_token(lex, "integer variable index");
                long long j = parse_integer(idx, "integer variable index");
                if (j < 0 || j >= raw.num_vars) {
                    fail(idx, "integer variable index " + std::to_string(j) +
                                  " out of range [0, " +
                                  std::to_string(raw.num_vars) + ")");
                }
                if (!seen.insert(static_cast<int>(j)).second) {
                    fail(idx, "duplicate integer variable index " +
                                  std::to_string(j));
                }
                raw.integers.push_back(static_cast<int>(j));
            }
        } else if (kw == "CON") {
            if (saw_con) fail(*t, "duplicate CON section");
            saw_con = true;
            parse_block_list(lex, "CON", raw.num_rows, raw.row_blocks);
        } else if (kw == "OBJACOORD") {
            if (saw_objacoord) fail(*t, "duplicate OBJACOORD section");
            if (!saw_var) {
                fail(*t, "OBJACOORD section requires a preceding VAR section");
            }
            saw_objacoord = true;
            int count = require_int(lex, "objective coefficient count");
            if (count < 0) fail(*t, "objective coefficient count is negative");
            std::unordered_set<int> seen;
            for (int k = 0; k < count; ++k) {
                Token idx = require_token(lex, "objective variable index");
                long long j = parse_integer(idx, "objective variable index");
                if (j < 0 || j >= raw.num_vars) {
                    fail(idx, "objective variable index " + std::to_string(j) +
                                  " out of range [0, " +
                                  std::to_string(raw.num_vars) + ")");
                }
                double v = require_double(lex, "objective coefficient");
                if (!seen.insert(static_cast<int>(j)).second) {
                    fail(idx, "duplicate objective coefficient for variable " +
                                  std::to_string(j));
                }
                raw.obj_coeffs.emplace_back(static_cast<int>(j), v);
            }
        } else if (kw == "ACOORD") {
            if (saw_acoord) fail(*t, "duplicate ACOORD section");
            if (!saw_var) fail(*t, "ACOORD section requires a preceding VAR section");
            if (!saw_con) fail(*t, "ACOORD section requires a preceding CON section");
            saw_acoord = true;
            int count = require_int(lex, "constraint coefficient count");
            if (count < 0) fail(*t, "constraint coefficient count is negative");
            std::set<std::pair<int, int>> seen;
            for (int k = 0; k < count; ++k) {
                Token ri = require_token(lex, "constraint row index");
                long long i = parse_integer(ri, "constraint row index");
                if (i < 0 || i >= raw.num_rows) {
                    fail(ri, "constraint row index " + std::to_string(i) +
                                 " out of range [0, " +
                                 std::to_string(raw.num_rows) + ")");
                }
                Token ci = require_token(lex, "constraint column index");
                long long j = parse_integer(ci, "constraint column index");
                if (j < 0 || j >= raw.num_vars) {
                    fail(ci, "constraint column index " + std::to_string(j) +
                                 " out of range [0, " +
                                 std::to_string(raw.num_vars) + ")");
                }
                double v = require_double(lex, "constraint coefficient");
                if (!seen.emplace(static_cast<int>(i), static_cast<int>(j))
                         .second) {
                    fail(ri, "duplicate constraint coefficient at (" +
                                 std::to_string(i) + ", " + std::to_string(j) +
                                 ")");
                }
                raw.coeffs.emplace_back(static_cast<int>(i),
                                        static_cast<int>(j), v);
            }
        } else if (kw == "BCOORD") {
            if (saw_bcoord) fail(*t, "duplicate BCOORD section");
            if (!saw_con) fail(*t, "BCOORD section requires a preceding CON section");
            saw_bcoord = true;
            int count = require_int(lex, "right-hand-side count");
            if (count < 0) fail(*t, "right-hand-side count is negative");
            std::unordered_set<int> seen;
            for (int k = 0; k < count; ++k) {
                Token ri = require_token(lex, "right-hand-side row index");
                long long i = parse_integer(ri, "right-hand-side row index");
                if (i < 0 || i >= raw.num_rows) {
                    fail(ri, "right-hand-side row index " + std::to_string(i) +
                                 " out of range [0, " +
                                 std::to_string(raw.num_rows) + ")");
                }
                double v = require_double(lex, "right-hand-side value");
                if (!seen.insert(static_cast<int>(i)).second) {
                    fail(ri, "duplicate right-hand-side entry for row " +
                                 std::to_string(i));
                }
                raw.rhs.emplace_back(static_cast<int>(i), v);
            }
        } else if (kw == "PSDVAR" || kw == "PSDCON" || kw == "HCOORD" ||
                   kw == "DCOORD" || kw == "FCOORD" || kw == "OBJFCOORD" ||
                   kw == "OBJBCOORD" || kw == "POWCONES" || kw == "POW*CONES") {
            fail(*t, "unsupported keyword '" + kw + "'");
        } else {
            fail(*t, "unknown keyword '" + kw + "'");
        }
    }

    if (!saw_ver) throw ParseError(1, "missing VER header");
    if (!saw_objsense) {
        throw ParseError(lex.last_line() == 0 ? 1 : lex.last_line(),
                         "missing OBJSENSE section");
    }
    if (!saw_var) {
        throw ParseError(lex.last_line() == 0 ? 1 : lex.last_line(),
                         "missing VAR section");
    }
    return raw;
}

RawInstance parse_cbf_string(const std::string& text) {
    std::istringstream in(text);
    return parse_cbf(in);
}

RawInstance parse_cbf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InstanceError("cannot open instance file: " + path);
    return parse_cbf(in);
}

}  // namespace coniccut
