#include "qlv/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace qlv {

namespace {

std::string format_parse_error(const std::string& message, std::size_t line, std::size_t column,
                               const std::vector<std::string>& expected) {
    std::ostringstream out;
    out << line << ':' << column << ": " << message;
    if (!expected.empty()) {
        out << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) out << (i + 1 == expected.size() ? " or " : ", ");
            out << expected[i];
        }
        out << ')';
    }
    return out.str();
}

enum class Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Tilde,
    Amp,
    Caret,
    Pipe,
    Arrow,
    DoubleArrow,
    Ident,
    Int,
    End,
};

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t offset;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + std::string(t.text) + "'";
}

class Parser {
public:
    Parser(std::string_view text, const PropEnv* props) : text_(text), props_(props) {
        tokenize();
    }

    Term parse() {
        Term t = parse_binary(1);
        if (peek().kind != Tok::End) {
            fail("unexpected " + describe(peek()), peek().offset,
                 {"an infix operator", "end of input"});
        }
        return t;
    }

private:
    [[noreturn]] void fail(const std::string& message, std::size_t offset,
                           std::vector<std::string> expected = {}) const {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(message, offset, line, column, std::move(expected));
    }

    void tokenize() {
        std::size_t i = 0;
        while (i < text_.size()) {
            const char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            auto single = [&](Tok kind) {
                tokens_.push_back({kind, text_.substr(i, 1), i});
                ++i;
            };
            switch (c) {
                case '(': single(Tok::LParen); continue;
                case ')': single(Tok::RParen); continue;
                case '[': single(Tok::LBracket); continue;
                case ']': single(Tok::RBracket); continue;
                case '~': single(Tok::Tilde); continue;
                case '&': single(Tok::Amp); continue;
                case '^': single(Tok::Caret); continue;
                case '|': single(Tok::Pipe); continue;
                default: break;
            }
            if (text_.substr(i, 3) == "<->") {
                tokens_.push_back({Tok::DoubleArrow, text_.substr(i, 3), i});
                i += 3;
                continue;
            }
            if (text_.substr(i, 2) == "->") {
                tokens_.push_back({Tok::Arrow, text_.substr(i, 2), i});
                i += 2;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
                tokens_.push_back({Tok::Int, text_.substr(i, j - i), i});
                i = j;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) {
                    ++j;
                }
                tokens_.push_back({Tok::Ident, text_.substr(i, j - i), i});
                i = j;
                continue;
            }
            fail("unexpected character '" + std::string(1, c) + "'", i);
        }
        tokens_.push_back({Tok::End, {}, text_.size()});
    }

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail("unexpected " + describe(peek()), peek().offset, {what});
        return next();
    }

    int parse_index(const Token& t) const {
        int value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
            fail("qubit index '" + std::string(t.text) + "' is out of range", t.offset);
        }
        if (value < 1) fail("qubit indices start at 1", t.offset);
        return value;
    }

    static std::optional<TermKind> infix(Tok kind) {
        switch (kind) {
            case Tok::Amp: return TermKind::And;
            case Tok::Caret: return TermKind::Xor;
            case Tok::Pipe: return TermKind::Or;
            case Tok::Arrow: return TermKind::Imp;
            case Tok::DoubleArrow: return TermKind::Iff;
            default: return std::nullopt;
        }
    }

    Term parse_binary(int min_prec) {
        Term lhs = parse_prefix();
        for (;;) {
            const auto op = infix(peek().kind);
            if (!op) return lhs;
            const int prec = precedence(*op);
            if (prec < min_prec) return lhs;
            next();
            const bool right_assoc = *op == TermKind::Imp;
            Term rhs = parse_binary(right_assoc ? prec : prec + 1);
            const std::size_t at = lhs.position();
            lhs = Term::binary(*op, std::move(lhs), std::move(rhs), at);
        }
    }

    Term parse_prefix() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Tilde: {
                next();
                return Term::negation(parse_prefix(), t.offset);
            }
            case Tok::LBracket: return parse_modality();
            case Tok::LParen: {
                next();
                Term inner = parse_binary(1);
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::Ident: return parse_identifier();
            default:
                fail("unexpected " + describe(t), t.offset,
                     {"an atom", "'top'", "'bot'", "'~'", "'['", "'('"});
        }
    }

    Term parse_modality() {
        const std::size_t start = next().offset;
        const Token& name = expect(Tok::Ident, "a gate name or mz/mx/my");
        if (name.text == "mz" || name.text == "mx" || name.text == "my") {
            const Axis axis = name.text[1] == 'z' ? Axis::Z : name.text[1] == 'x' ? Axis::X : Axis::Y;
            const int qubit = parse_index(expect(Tok::Int, "a qubit index"));
            expect(Tok::RBracket, "']'");
            return Term::measure(axis, qubit, parse_prefix(), start);
        }
        GateRef gate{std::string(name.text), {}};
        while (peek().kind == Tok::Int) gate.wires.push_back(parse_index(next()));
        if (gate.wires.empty()) fail("unexpected " + describe(peek()), peek().offset, {"a wire index"});
        expect(Tok::RBracket, "']'");
        return Term::apply(std::move(gate), parse_prefix(), start);
    }

    Term parse_identifier() {
        const Token& t = next();
        const std::string_view s = t.text;
        if (s == "top") return Term::top(t.offset);
        if (s == "bot") return Term::bottom(t.offset);
        if (s.size() >= 2 && (s[0] == 'z' || s[0] == 'x' || s[0] == 'y')) {
            bool digits = true;
            for (char c : s.substr(1)) digits = digits && std::isdigit(static_cast<unsigned char>(c));
            if (digits) {
                const Axis axis = s[0] == 'z' ? Axis::Z : s[0] == 'x' ? Axis::X : Axis::Y;
                const Token index{Tok::Int, s.substr(1), t.offset + 1};
                return Term::atom(axis, parse_index(index), t.offset);
            }
        }
        if (props_ != nullptr) {
            auto it = props_->find(s);
            if (it != props_->end()) return it->second;
        }
        fail("unknown identifier '" + std::string(s) + "'", t.offset,
             {"an atom such as z1", "'top'", "'bot'", "a defined proposition"});
    }

    std::string_view text_;
    const PropEnv* props_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(std::string message, std::size_t offset, std::size_t line,
                       std::size_t column, std::vector<std::string> expected)
    : Error(format_parse_error(message, line, column, expected)),
      message_(std::move(message)),
      offset_(offset),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

Term parse_term(std::string_view text, const PropEnv* props) {
    return Parser(text, props).parse();
}

}  // namespace qlv
