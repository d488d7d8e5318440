#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "qlv/gates.hpp"

namespace qlv {

enum class TermKind { Atom, Top, Bottom, Not, And, Or, Imp, Iff, Xor, Apply, Meas };

/// Gate name plus 1-based wires, as written in `[CNOT 1 2]p`. Resolution
/// against a GateRegistry happens at interpretation time.
struct GateRef {
    std::string name;
    std::vector<int> wires;

    friend bool operator==(const GateRef&, const GateRef&) = default;
};

/// Immutable proposition tree. Copies share structure. Every node records the
/// offset of its first character in the source text (0 for built terms).
class Term {
public:
    static Term atom(Axis axis, int qubit, std::size_t pos = 0);
    static Term top(std::size_t pos = 0);
    static Term bottom(std::size_t pos = 0);
    static Term negation(Term operand, std::size_t pos = 0);
    static Term binary(TermKind kind, Term lhs, Term rhs, std::size_t pos = 0);
    static Term apply(GateRef gate, Term operand, std::size_t pos = 0);
    static Term measure(Axis axis, int qubit, Term operand, std::size_t pos = 0);

    TermKind kind() const;
    std::size_t position() const;

    /// Atom and Meas nodes.
    Axis axis() const;
    int qubit() const;

    /// Not, Apply, Meas.
    const Term& operand() const;

    /// Binary connectives.
    const Term& lhs() const;
    const Term& rhs() const;

    /// Apply nodes.
    const GateRef& gate() const;

    bool is_binary() const;

    /// Node count.
    std::size_t size() const;

    /// Largest qubit index mentioned by atoms, gates or measurements (0 if none).
    int max_qubit() const;

    /// Structural equality; source positions are ignored.
    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Builders for terms written in code.
Term z(int qubit);
Term x(int qubit);
Term y(int qubit);
Term neg(Term a);
Term conj(Term a, Term b);
Term disj(Term a, Term b);
Term implies(Term a, Term b);
Term iff(Term a, Term b);
Term xor_of(Term a, Term b);

/// Binding strength used by the parser and the printer (higher binds
/// tighter): <-> 1, -> 2, | 3, ^ 4, & 5, prefix operators 6, atoms 7.
int precedence(TermKind kind);

/// Operator spelling of a binary connective (`&`, `^`, `|`, `->`, `<->`).
const char* connective_symbol(TermKind kind);

/// Minimal-parenthesis rendering that `parse_term` reads back to the same tree.
std::string pretty(const Term& t);

/// Rewrites |, ->, <->, ^ into ~ and &. Apply and Meas nodes are kept with
/// desugared children.
Term desugar(const Term& t);

}  // namespace qlv
