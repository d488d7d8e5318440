#include "qlv/script.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace qlv {

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::Equiv: return "equiv";
        case Relation::Entails: return "entails";
        case Relation::EntailedBy: return "entailed-by";
    }
    return "?";
}

InterpContext Script::context(const ToleranceConfig& tol) const {
    return InterpContext(qubits, tol, gates);
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool looks_like_atom(std::string_view s) {
    if (s.size() < 2 || (s[0] != 'z' && s[0] != 'x' && s[0] != 'y')) return false;
    for (char c : s.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// Cursor over one script line. Columns are 1-based.
class LineReader {
public:
    LineReader(std::string_view line, std::size_t line_no, std::size_t line_offset)
        : line_(line), line_no_(line_no), line_offset_(line_offset) {}

    [[noreturn]] void fail(const std::string& message, std::size_t col0,
                           std::vector<std::string> expected = {}) const {
        throw ParseError(message, line_offset_ + col0, line_no_, col0 + 1, std::move(expected));
    }

    void skip_space() {
        while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
    }

    bool at_end() {
        skip_space();
        return pos_ >= line_.size();
    }

    std::size_t pos() const { return pos_; }
    void seek(std::size_t p) { pos_ = p; }
    std::string_view rest() const { return line_.substr(pos_); }
    std::string_view line() const { return line_; }

    std::string_view identifier(const char* what, bool allow_hyphen = false) {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ >= line_.size() || !is_ident_start(line_[pos_])) fail("expected " + std::string(what), pos_, {what});
        while (pos_ < line_.size() && (is_ident_char(line_[pos_]) || (allow_hyphen && line_[pos_] == '-'))) ++pos_;
        return line_.substr(start, pos_ - start);
    }

    int integer(const char* what) {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
        int value = 0;
        auto [ptr, ec] = std::from_chars(line_.data() + start, line_.data() + pos_, value);
        if (start == pos_ || ec != std::errc{} || ptr != line_.data() + pos_) {
            fail("expected " + std::string(what), start, {what});
        }
        return value;
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= line_.size() || line_[pos_] != c) {
            fail("expected '" + std::string(1, c) + "'", pos_, {"'" + std::string(1, c) + "'"});
        }
        ++pos_;
    }

    void expect_end() {
        if (!at_end()) fail("unexpected trailing text", pos_, {"end of line"});
    }

    // Parses line_[begin, end) as a term, mapping term errors to this line.
    Term term(std::size_t begin, std::size_t end, const PropEnv& props) const {
        const std::string_view text = line_.substr(begin, end - begin);
        try {
            return parse_term(text, &props);
        } catch (const ParseError& e) {
            fail(e.message(), begin + e.offset(), e.expected());
        }
    }

    [[noreturn]] void invalid(const std::string& message) const {
        throw ValidationError("line " + std::to_string(line_no_) + ": " + message);
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::string_view line_;
    std::size_t line_no_;
    std::size_t line_offset_;
    std::size_t pos_ = 0;
};

void validate_term(const Term& t, const InterpContext& ctx, const LineReader& reader) {
    try {
        if (const int q = t.max_qubit(); q > ctx.qubits()) {
            throw ValidationError("term mentions qubit " + std::to_string(q) + " but the script declares " +
                                  std::to_string(ctx.qubits()) + " qubit(s)");
        }
        auto walk = [&](auto&& self, const Term& node) -> void {
            if (node.kind() == TermKind::Apply) ctx.resolve(node.gate());
            switch (node.kind()) {
                case TermKind::Atom:
                case TermKind::Top:
                case TermKind::Bottom: return;
                case TermKind::Not:
                case TermKind::Apply:
                case TermKind::Meas: self(self, node.operand()); return;
                default:
                    self(self, node.lhs());
                    self(self, node.rhs());
            }
        };
        walk(walk, t);
    } catch (const ValidationError& e) {
        reader.invalid(e.what());
    }
}

struct ScriptBuilder {
    Script script;
    std::shared_ptr<GateRegistry> gates = std::make_shared<GateRegistry>();
    std::map<std::string, std::size_t, std::less<>> stage_index;
    bool have_qubits = false;

    void require_qubits(const LineReader& r) const {
        if (!have_qubits) r.invalid("'qubits N' must come before stages, propositions and assertions");
    }

    InterpContext context() const {
        return InterpContext(script.qubits, {}, gates);
    }

    void qubits(LineReader& r) {
        if (have_qubits) r.invalid("'qubits' declared twice");
        if (!script.stages.empty() || !script.props.empty() || !script.assertions.empty()) {
            r.invalid("'qubits' must come first");
        }
        const std::size_t at = r.pos();
        const int n = r.integer("a qubit count");
        r.expect_end();
        if (n < 1 || n > kMaxQubits) {
            r.fail("qubit count must be in 1.." + std::to_string(kMaxQubits), at);
        }
        script.qubits = n;
        have_qubits = true;
    }

    void gate(LineReader& r) {
        const std::string name(r.identifier("a gate name"));
        if (name == "mz" || name == "mx" || name == "my") r.invalid("'" + name + "' is reserved for measurements");
        r.expect('=');
        r.skip_space();
        const std::size_t start = r.pos();
        ComplexMatrix m;
        try {
            m = parse_matrix_literal(r.rest());
        } catch (const ParseError& e) {
            r.fail(e.message(), start + e.offset());
        }
        try {
            gates->add(make_gate(name, std::move(m)));
        } catch (const ValidationError& e) {
            r.invalid(e.what());
        }
    }

    void stage(LineReader& r) {
        require_qubits(r);
        Stage st;
        st.name = std::string(r.identifier("a stage name"));
        st.line = r.line_no();
        if (stage_index.contains(st.name)) r.invalid("stage '" + st.name + "' defined twice");
        r.expect(':');
        for (;;) {
            r.skip_space();
            const std::size_t op_start = r.pos();
            const std::string op(r.identifier("a gate name or measz/measx/measy"));
            StageOp sop;
            if (op == "measz" || op == "measx" || op == "measy") {
                sop.kind = StageOp::Kind::Measure;
                sop.axis = op.back() == 'z' ? Axis::Z : op.back() == 'x' ? Axis::X : Axis::Y;
                sop.qubit = r.integer("a qubit index");
                if (sop.qubit < 1 || sop.qubit > script.qubits) {
                    r.invalid("measurement wire " + std::to_string(sop.qubit) + " out of range 1.." +
                              std::to_string(script.qubits));
                }
            } else {
                sop.kind = StageOp::Kind::Gate;
                std::vector<int> wires;
                r.skip_space();
                while (r.pos() < r.line().size() && std::isdigit(static_cast<unsigned char>(r.line()[r.pos()]))) {
                    wires.push_back(r.integer("a wire index"));
                    r.skip_space();
                }
                if (wires.empty()) r.fail("expected a wire index", r.pos(), {"a wire index"});
                try {
                    sop.gate = context().resolve(GateRef{op, std::move(wires)});
                } catch (const ValidationError& e) {
                    r.invalid(e.what());
                }
            }
            std::string_view text = r.line().substr(op_start, r.pos() - op_start);
            while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
            sop.text = std::string(text);
            st.ops.push_back(std::move(sop));
            if (r.at_end()) break;
            r.expect(';');
        }
        stage_index.emplace(st.name, script.stages.size() + 1);
        script.stages.push_back(std::move(st));
    }

    void prop(LineReader& r) {
        require_qubits(r);
        const std::size_t name_at = r.pos();
        const std::string name(r.identifier("a proposition name"));
        if (looks_like_atom(name) || name == "top" || name == "bot") {
            r.fail("'" + name + "' cannot be used as a proposition name", name_at);
        }
        if (script.props.contains(name)) r.invalid("proposition '" + name + "' defined twice");
        r.expect('=');
        Term t = r.term(r.pos(), r.line().size(), script.props);
        validate_term(t, context(), r);
        script.props.emplace(name, std::move(t));
    }

    std::size_t stage_ref(LineReader& r) {
        r.skip_space();
        const std::size_t at = r.pos();
        if (at < r.line().size() && std::isdigit(static_cast<unsigned char>(r.line()[at]))) {
            const int k = r.integer("a stage index");
            if (static_cast<std::size_t>(k) > script.stages.size()) {
                r.invalid("stage @" + std::to_string(k) + " does not exist (script has " +
                          std::to_string(script.stages.size()) + " stage(s))");
            }
            return static_cast<std::size_t>(k);
        }
        const std::string name(r.identifier("a stage index or name"));
        auto it = stage_index.find(name);
        if (it == stage_index.end()) r.invalid("unknown stage '" + name + "'");
        return it->second;
    }

    void assertion(LineReader& r) {
        require_qubits(r);
        Assertion a;
        a.line = r.line_no();
        {
            std::string_view text = r.rest();
            while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
            while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
            a.text = std::string(text);
        }

        const std::string_view line = r.line();
        const std::size_t lhs_begin = r.pos();
        const std::size_t first_at = line.find('@', lhs_begin);
        if (first_at == std::string_view::npos) r.fail("expected '@' after the left-hand term", line.size(), {"'@'"});
        a.lhs = r.term(lhs_begin, first_at, script.props);
        r.seek(first_at + 1);
        a.from = stage_ref(r);

        r.skip_space();
        const std::size_t rel_at = r.pos();
        const std::string_view rel = r.identifier("equiv, entails or entailed-by", true);
        if (rel == "equiv") {
            a.relation = Relation::Equiv;
        } else if (rel == "entails") {
            a.relation = Relation::Entails;
        } else if (rel == "entailed-by") {
            a.relation = Relation::EntailedBy;
        } else {
            r.fail("unknown relation '" + std::string(rel) + "'", rel_at, {"equiv", "entails", "entailed-by"});
        }

        const std::size_t rhs_begin = r.pos();
        const std::size_t last_at = line.rfind('@');
        if (last_at == std::string_view::npos || last_at < rhs_begin) {
            r.fail("expected '@' after the right-hand term", line.size(), {"'@'"});
        }
        a.rhs = r.term(rhs_begin, last_at, script.props);
        r.seek(last_at + 1);
        a.to = stage_ref(r);
        r.expect_end();

        const InterpContext ctx = context();
        validate_term(a.lhs, ctx, r);
        validate_term(a.rhs, ctx, r);
        if (a.from > a.to) {
            r.invalid("assertion goes backwards: @" + std::to_string(a.from) + " is after @" +
                      std::to_string(a.to));
        }
        script.assertions.push_back(std::move(a));
    }
};

Subspace apply_op(const StageOp& op, const Subspace& s, int n, const ToleranceConfig& tol) {
    if (op.kind == StageOp::Kind::Gate) return apply_gate(op.gate, n, s);
    return measurement_closure(s, op.axis, op.qubit, n, tol);
}

std::string format_real(double v) {
    if (std::abs(v) < 5e-13) v = 0.0;
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

StateVector phase_normalized(const StateVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-9) return v * (std::abs(v(i)) / v(i));
    }
    return v;
}

}  // namespace

Script parse_script(std::string_view text) {
    ScriptBuilder b;
    std::size_t line_no = 0;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(offset, end - offset);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        LineReader r(line, line_no, offset);
        if (!r.at_end()) {
            const std::size_t kw_at = r.pos();
            const std::string_view kw = r.identifier("a directive");
            if (kw == "qubits") {
                b.qubits(r);
            } else if (kw == "gate") {
                b.gate(r);
            } else if (kw == "stage") {
                b.stage(r);
            } else if (kw == "prop") {
                b.prop(r);
            } else if (kw == "assert") {
                b.assertion(r);
            } else {
                r.fail("unknown directive '" + std::string(kw) + "'", kw_at,
                       {"qubits", "gate", "stage", "prop", "assert"});
            }
        }
        if (end == text.size()) break;
        offset = end + 1;
    }
    if (!b.have_qubits) throw ValidationError("script does not declare 'qubits N'");
    b.script.gates = b.gates;
    return std::move(b.script);
}

Script load_script(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_script(buf.str());
}

Subspace forward_image(const Subspace& s, const Script& script, std::size_t from, std::size_t to,
                       const ToleranceConfig& tol, std::vector<std::size_t>* trace) {
    if (from > to || to > script.stages.size()) {
        throw ValidationError("forward_image: invalid stage range @" + std::to_string(from) + "..@" +
                              std::to_string(to));
    }
    Subspace current = s;
    if (trace) trace->push_back(current.rank());
    for (std::size_t k = from + 1; k <= to; ++k) {
        for (const auto& op : script.stages[k - 1].ops) current = apply_op(op, current, script.qubits, tol);
        if (trace) trace->push_back(current.rank());
    }
    return current;
}

AssertionResult check_assertion(const Script& script, const Assertion& assertion,
                                const InterpContext& ctx) {
    const auto& tol = ctx.tol();
    AssertionResult out;
    const Subspace lhs = forward_image(interpret(assertion.lhs, ctx), script, assertion.from,
                                       assertion.to, tol, &out.stage_dims);
    const Subspace rhs = interpret(assertion.rhs, ctx);
    out.lhs_dim = lhs.rank();
    out.rhs_dim = rhs.rank();

    auto direction = [&](const Subspace& inner, const Subspace& outer, const char* side) {
        const InclusionResidual res = inclusion_residual(inner, outer);
        out.max_residual = std::max(out.max_residual, res.max_residual);
        const bool ok = includes(inner, outer, tol);
        if (!ok && !out.counterexample) {
            out.counterexample = res.worst_vector;
            out.counterexample_side = side;
        }
        return ok;
    };

    switch (assertion.relation) {
        case Relation::Entails: out.pass = direction(lhs, rhs, "lhs"); break;
        case Relation::EntailedBy: out.pass = direction(rhs, lhs, "rhs"); break;
        case Relation::Equiv: {
            const bool forward = direction(lhs, rhs, "lhs");
            const bool backward = direction(rhs, lhs, "rhs");
            out.pass = forward && backward;
            break;
        }
    }
    return out;
}

std::vector<AssertionResult> check_script(const Script& script, const ToleranceConfig& tol) {
    const InterpContext ctx = script.context(tol);
    std::vector<AssertionResult> results;
    results.reserve(script.assertions.size());
    for (const auto& a : script.assertions) results.push_back(check_assertion(script, a, ctx));
    return results;
}

std::string format_complex(Complex c) {
    const std::string re = format_real(c.real());
    std::string im = format_real(c.imag());
    if (im.front() != '-') im.insert(im.begin(), '+');
    return re + im + "i";
}

std::string format_state(const StateVector& v, int qubits) {
    const StateVector w = phase_normalized(v);
    std::ostringstream out;
    bool first = true;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (std::abs(w(i)) <= 1e-9) continue;
        if (!first) out << " + ";
        first = false;
        out << '(' << format_complex(w(i)) << ")|";
        for (int q = qubits - 1; q >= 0; --q) out << ((i >> q) & 1);
        out << '>';
    }
    if (first) out << '0';
    return out.str();
}

std::string format_state_dense(const StateVector& v) {
    const StateVector w = phase_normalized(v);
    std::string out;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (i > 0) out += ' ';
        out += format_complex(w(i));
    }
    return out;
}

}  // namespace qlv
