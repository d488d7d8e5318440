#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "qlv/interpreter.hpp"
#include "qlv/term.hpp"

namespace qlv {

/// Where a rewrite row comes from: the standard gate table, or derived here
/// (CZ, SWAP, y-axis rows and corrections of rows that fail validation).
enum class Provenance { Reference, Derived };

const char* provenance_name(Provenance p);

/// `[gate 1..a] atom(axis, role) -||- replacement`, stated over formal wires
/// 1..a. Instantiation maps formal wire r to the r-th actual wire.
struct RewriteRule {
    std::string gate;
    int arity = 0;
    Axis axis = Axis::Z;
    int role = 1;
    Term replacement = Term::top();
    Provenance provenance = Provenance::Reference;
    std::string note;

    /// The left-hand side `[gate 1 .. a] atom` over formal wires.
    Term lhs() const;
};

/// Replaces every atom on formal wire r by the same atom on wires[r - 1].
Term instantiate(const Term& formal, const std::vector<int>& wires);

/// Checks a rule numerically: with the gate on wires 1..a in an a-qubit
/// register, and on wires 2..a+1 in an (a+1)-qubit register so that an idle
/// wire is present. True iff both sides denote the same subspace.
bool validate_rule(const RewriteRule& rule, const GateRegistry& gates = GateRegistry{},
                   const ToleranceConfig& tol = {});

/// Stronger check: every ordered choice of distinct wires in registers of
/// a..max_qubits qubits.
bool validate_rule_all_wirings(const RewriteRule& rule, int max_qubits,
                               const GateRegistry& gates = GateRegistry{},
                               const ToleranceConfig& tol = {});

/// Searches the replacement family `a`, `~a`, `a ^ b`, `~(a ^ b)`,
/// `a ^ (b & c)`, `~(a ^ (b & c))` over atoms of the gate's formal wires,
/// smallest first, and returns the first one that validates.
std::optional<Term> discover_replacement(std::string_view gate, Axis axis, int role,
                                         const GateRegistry& gates = GateRegistry{},
                                         const ToleranceConfig& tol = {});

/// Validated rewrite rows keyed by (gate, axis, role). Frozen after
/// construction.
class RuleTable {
public:
    struct Rejection {
        RewriteRule rule;
        std::string replaced_by;
    };

    /// Empty table.
    RuleTable() = default;

    /// The shipped rows, each gated on validate_rule.
    static RuleTable standard(const ToleranceConfig& tol = {});

    /// Validates and stores `rule`. Returns false (and records the rejection)
    /// when validation fails. Throws ValidationError if the replacement names
    /// a wire outside 1..arity.
    bool add(RewriteRule rule, const GateRegistry& gates, const ToleranceConfig& tol);

    const RewriteRule* find(std::string_view gate, Axis axis, int role) const;

    /// Accepted rows in insertion order.
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const std::vector<Rejection>& rejected() const { return rejected_; }

private:
    std::vector<RewriteRule> rules_;
    std::vector<Rejection> rejected_;
    std::map<std::tuple<std::string, Axis, int>, std::size_t, std::less<>> index_;
};

/// Pushes gate and measurement modalities down to atoms. Gates distribute
/// over every connective; a gate on an atom is replaced by its table row, by
/// the atom itself when the gate does not touch its wire, or left in place
/// when no row exists. `[m<axis> i]p` becomes `p | [<Pauli> i]p`. The result
/// has no Meas nodes.
Term push_dynamic(const Term& t, const RuleTable& table);

/// Applies ~~p -> p, p & top -> p, p & bot -> bot, p | p -> p, p & p -> p,
/// p ^ bot -> p, p | bot -> p (and their mirror images) until nothing changes.
Term simplify(const Term& t);

/// One (redex, contractum) pair per simplification rule with `p` as the
/// metavariable, for checking the rules against the interpreter.
std::vector<std::pair<Term, Term>> simplification_instances(const Term& p);

}  // namespace qlv
