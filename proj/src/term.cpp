#include "qlv/term.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qlv {

struct Term::Node {
    TermKind kind = TermKind::Top;
    std::size_t pos = 0;
    Axis axis = Axis::Z;
    int qubit = 0;
    GateRef gate;
    std::vector<Term> children;
};

Term Term::atom(Axis axis, int qubit, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Atom;
    n->axis = axis;
    n->qubit = qubit;
    n->pos = pos;
    return Term(std::move(n));
}

Term Term::top(std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Top;
    n->pos = pos;
    return Term(std::move(n));
}

Term Term::bottom(std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Bottom;
    n->pos = pos;
    return Term(std::move(n));
}

Term Term::negation(Term operand, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Not;
    n->pos = pos;
    n->children.push_back(std::move(operand));
    return Term(std::move(n));
}

Term Term::binary(TermKind kind, Term lhs, Term rhs, std::size_t pos) {
    assert(kind == TermKind::And || kind == TermKind::Or || kind == TermKind::Imp ||
           kind == TermKind::Iff || kind == TermKind::Xor);
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->pos = pos;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Term(std::move(n));
}

Term Term::apply(GateRef gate, Term operand, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Apply;
    n->pos = pos;
    n->gate = std::move(gate);
    n->children.push_back(std::move(operand));
    return Term(std::move(n));
}

Term Term::measure(Axis axis, int qubit, Term operand, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Meas;
    n->pos = pos;
    n->axis = axis;
    n->qubit = qubit;
    n->children.push_back(std::move(operand));
    return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
std::size_t Term::position() const { return node_->pos; }
Axis Term::axis() const { return node_->axis; }
int Term::qubit() const { return node_->qubit; }
const Term& Term::operand() const { return node_->children.at(0); }
const Term& Term::lhs() const { return node_->children.at(0); }
const Term& Term::rhs() const { return node_->children.at(1); }
const GateRef& Term::gate() const { return node_->gate; }

bool Term::is_binary() const { return node_->children.size() == 2; }

std::size_t Term::size() const {
    std::size_t total = 1;
    for (const auto& c : node_->children) total += c.size();
    return total;
}

int Term::max_qubit() const {
    int m = 0;
    switch (kind()) {
        case TermKind::Atom:
        case TermKind::Meas: m = qubit(); break;
        case TermKind::Apply:
            for (int w : gate().wires) m = std::max(m, w);
            break;
        default: break;
    }
    for (const auto& c : node_->children) m = std::max(m, c.max_qubit());
    return m;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.children.size() != y.children.size()) return false;
    switch (x.kind) {
        case TermKind::Atom:
            return x.axis == y.axis && x.qubit == y.qubit;
        case TermKind::Meas:
            if (x.axis != y.axis || x.qubit != y.qubit) return false;
            break;
        case TermKind::Apply:
            if (!(x.gate == y.gate)) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < x.children.size(); ++i) {
        if (!(x.children[i] == y.children[i])) return false;
    }
    return true;
}

Term z(int qubit) { return Term::atom(Axis::Z, qubit); }
Term x(int qubit) { return Term::atom(Axis::X, qubit); }
Term y(int qubit) { return Term::atom(Axis::Y, qubit); }
Term neg(Term a) { return Term::negation(std::move(a)); }
Term conj(Term a, Term b) { return Term::binary(TermKind::And, std::move(a), std::move(b)); }
Term disj(Term a, Term b) { return Term::binary(TermKind::Or, std::move(a), std::move(b)); }
Term implies(Term a, Term b) { return Term::binary(TermKind::Imp, std::move(a), std::move(b)); }
Term iff(Term a, Term b) { return Term::binary(TermKind::Iff, std::move(a), std::move(b)); }
Term xor_of(Term a, Term b) { return Term::binary(TermKind::Xor, std::move(a), std::move(b)); }

int precedence(TermKind kind) {
    switch (kind) {
        case TermKind::Iff: return 1;
        case TermKind::Imp: return 2;
        case TermKind::Or: return 3;
        case TermKind::Xor: return 4;
        case TermKind::And: return 5;
        case TermKind::Not:
        case TermKind::Apply:
        case TermKind::Meas: return 6;
        case TermKind::Atom:
        case TermKind::Top:
        case TermKind::Bottom: return 7;
    }
    return 7;
}

const char* connective_symbol(TermKind kind) {
    switch (kind) {
        case TermKind::And: return "&";
        case TermKind::Xor: return "^";
        case TermKind::Or: return "|";
        case TermKind::Imp: return "->";
        case TermKind::Iff: return "<->";
        default: return "?";
    }
}

namespace {

void print(const Term& t, int min_prec, std::ostringstream& out) {
    const int prec = precedence(t.kind());
    const bool parens = prec < min_prec;
    if (parens) out << '(';
    switch (t.kind()) {
        case TermKind::Atom: out << axis_letter(t.axis()) << t.qubit(); break;
        case TermKind::Top: out << "top"; break;
        case TermKind::Bottom: out << "bot"; break;
        case TermKind::Not:
            out << '~';
            print(t.operand(), 6, out);
            break;
        case TermKind::Apply:
            out << '[' << t.gate().name;
            for (int w : t.gate().wires) out << ' ' << w;
            out << ']';
            print(t.operand(), 6, out);
            break;
        case TermKind::Meas:
            out << "[m" << axis_letter(t.axis()) << ' ' << t.qubit() << ']';
            print(t.operand(), 6, out);
            break;
        default: {
            // -> associates to the right, everything else to the left.
            const bool right_assoc = t.kind() == TermKind::Imp;
            print(t.lhs(), right_assoc ? prec + 1 : prec, out);
            out << ' ' << connective_symbol(t.kind()) << ' ';
            print(t.rhs(), right_assoc ? prec : prec + 1, out);
            break;
        }
    }
    if (parens) out << ')';
}

Term desugar_imp(Term p, Term q) {
    return Term::negation(Term::binary(TermKind::And, std::move(p), Term::negation(std::move(q))));
}

Term desugar_iff(const Term& p, const Term& q) {
    return Term::binary(TermKind::And, desugar_imp(p, q), desugar_imp(q, p));
}

}  // namespace

std::string pretty(const Term& t) {
    std::ostringstream out;
    print(t, 0, out);
    return out.str();
}

Term desugar(const Term& t) {
    switch (t.kind()) {
        case TermKind::Atom:
        case TermKind::Top:
        case TermKind::Bottom: return t;
        case TermKind::Not: return Term::negation(desugar(t.operand()), t.position());
        case TermKind::And:
            return Term::binary(TermKind::And, desugar(t.lhs()), desugar(t.rhs()), t.position());
        case TermKind::Or:
            return Term::negation(Term::binary(TermKind::And, Term::negation(desugar(t.lhs())),
                                               Term::negation(desugar(t.rhs()))),
                                  t.position());
        case TermKind::Imp: return desugar_imp(desugar(t.lhs()), desugar(t.rhs()));
        case TermKind::Iff: return desugar_iff(desugar(t.lhs()), desugar(t.rhs()));
        case TermKind::Xor: return Term::negation(desugar_iff(desugar(t.lhs()), desugar(t.rhs())));
        case TermKind::Apply: return Term::apply(t.gate(), desugar(t.operand()), t.position());
        case TermKind::Meas:
            return Term::measure(t.axis(), t.qubit(), desugar(t.operand()), t.position());
    }
    return t;
}

}  // namespace qlv
