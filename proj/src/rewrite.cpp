#include "qlv/rewrite.hpp"

#include <algorithm>
#include <numeric>

namespace qlv {

const char* provenance_name(Provenance p) {
    return p == Provenance::Reference ? "reference" : "derived";
}

Term RewriteRule::lhs() const {
    GateRef ref{gate, {}};
    ref.wires.resize(static_cast<std::size_t>(arity));
    std::iota(ref.wires.begin(), ref.wires.end(), 1);
    return Term::apply(std::move(ref), Term::atom(axis, role));
}

Term instantiate(const Term& formal, const std::vector<int>& wires) {
    auto wire = [&](int r) {
        if (r < 1 || r > static_cast<int>(wires.size())) {
            throw ValidationError("formal wire " + std::to_string(r) + " has no actual wire");
        }
        return wires[static_cast<std::size_t>(r - 1)];
    };
    switch (formal.kind()) {
        case TermKind::Atom: return Term::atom(formal.axis(), wire(formal.qubit()));
        case TermKind::Top:
        case TermKind::Bottom: return formal;
        case TermKind::Not: return Term::negation(instantiate(formal.operand(), wires));
        case TermKind::Apply: {
            GateRef ref = formal.gate();
            for (int& w : ref.wires) w = wire(w);
            return Term::apply(std::move(ref), instantiate(formal.operand(), wires));
        }
        case TermKind::Meas:
            return Term::measure(formal.axis(), wire(formal.qubit()), instantiate(formal.operand(), wires));
        default:
            return Term::binary(formal.kind(), instantiate(formal.lhs(), wires),
                                instantiate(formal.rhs(), wires));
    }
}

namespace {

bool holds_with_wires(const RewriteRule& rule, int n, const std::vector<int>& wires,
                      const std::shared_ptr<const GateRegistry>& gates, const ToleranceConfig& tol) {
    const InterpContext ctx(n, tol, gates);
    const Term lhs = Term::apply(GateRef{rule.gate, wires},
                                 Term::atom(rule.axis, wires[static_cast<std::size_t>(rule.role - 1)]));
    return equivalent(lhs, instantiate(rule.replacement, wires), ctx);
}

void check_formal_wires(const RewriteRule& rule) {
    if (rule.role < 1 || rule.role > rule.arity) {
        throw ValidationError("rule for " + rule.gate + ": role " + std::to_string(rule.role) +
                              " outside 1.." + std::to_string(rule.arity));
    }
    if (rule.replacement.max_qubit() > rule.arity) {
        throw ValidationError("rule for " + rule.gate + ": replacement mentions wire " +
                              std::to_string(rule.replacement.max_qubit()) + " beyond arity " +
                              std::to_string(rule.arity));
    }
}

std::vector<Term> formal_atoms(int arity) {
    std::vector<Term> atoms;
    for (int w = 1; w <= arity; ++w) {
        for (Axis a : {Axis::Z, Axis::X, Axis::Y}) atoms.push_back(Term::atom(a, w));
    }
    return atoms;
}

}  // namespace

bool validate_rule(const RewriteRule& rule, const GateRegistry& gates, const ToleranceConfig& tol) {
    check_formal_wires(rule);
    auto shared = std::make_shared<const GateRegistry>(gates);
    const auto gate = shared->at(rule.gate);
    if (gate->arity != rule.arity) return false;

    std::vector<int> wires(static_cast<std::size_t>(rule.arity));
    std::iota(wires.begin(), wires.end(), 1);
    if (!holds_with_wires(rule, rule.arity, wires, shared, tol)) return false;
    if (rule.arity + 1 <= kMaxQubits) {
        for (int& w : wires) ++w;
        if (!holds_with_wires(rule, rule.arity + 1, wires, shared, tol)) return false;
    }
    return true;
}

bool validate_rule_all_wirings(const RewriteRule& rule, int max_qubits, const GateRegistry& gates,
                               const ToleranceConfig& tol) {
    check_formal_wires(rule);
    auto shared = std::make_shared<const GateRegistry>(gates);
    if (shared->at(rule.gate)->arity != rule.arity) return false;

    for (int n = rule.arity; n <= max_qubits; ++n) {
        // Enumerate ordered selections of `arity` distinct wires from 1..n.
        std::vector<int> pool(static_cast<std::size_t>(n));
        std::iota(pool.begin(), pool.end(), 1);
        std::vector<int> wires(static_cast<std::size_t>(rule.arity));
        std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
        bool ok = true;
        auto recurse = [&](auto&& self, std::size_t depth) -> void {
            if (!ok) return;
            if (depth == wires.size()) {
                ok = holds_with_wires(rule, n, wires, shared, tol);
                return;
            }
            for (int w = 1; w <= n; ++w) {
                if (used[static_cast<std::size_t>(w)]) continue;
                used[static_cast<std::size_t>(w)] = true;
                wires[depth] = w;
                self(self, depth + 1);
                used[static_cast<std::size_t>(w)] = false;
            }
        };
        recurse(recurse, 0);
        if (!ok) return false;
    }
    return true;
}

std::optional<Term> discover_replacement(std::string_view gate, Axis axis, int role,
                                         const GateRegistry& gates, const ToleranceConfig& tol) {
    const int arity = gates.at(gate)->arity;
    const std::vector<Term> atoms = formal_atoms(arity);

    std::vector<Term> candidates;
    for (const auto& a : atoms) {
        candidates.push_back(a);
        candidates.push_back(neg(a));
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            candidates.push_back(xor_of(atoms[i], atoms[j]));
            candidates.push_back(neg(xor_of(atoms[i], atoms[j])));
        }
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            for (std::size_t k = j + 1; k < atoms.size(); ++k) {
                if (i == j || i == k) continue;
                const Term t = xor_of(atoms[i], conj(atoms[j], atoms[k]));
                candidates.push_back(t);
                candidates.push_back(neg(t));
            }
        }
    }

    RewriteRule rule;
    rule.gate = std::string(gate);
    rule.arity = arity;
    rule.axis = axis;
    rule.role = role;
    for (const auto& c : candidates) {
        rule.replacement = c;
        if (validate_rule(rule, gates, tol)) return c;
    }
    return std::nullopt;
}

bool RuleTable::add(RewriteRule rule, const GateRegistry& gates, const ToleranceConfig& tol) {
    check_formal_wires(rule);
    if (!validate_rule(rule, gates, tol)) {
        rejected_.push_back({std::move(rule), {}});
        return false;
    }
    auto key = std::make_tuple(rule.gate, rule.axis, rule.role);
    if (auto it = index_.find(key); it != index_.end()) {
        rules_[it->second] = std::move(rule);
        return true;
    }
    index_.emplace(std::move(key), rules_.size());
    rules_.push_back(std::move(rule));
    return true;
}

const RewriteRule* RuleTable::find(std::string_view gate, Axis axis, int role) const {
    auto it = index_.find(std::make_tuple(std::string(gate), axis, role));
    return it == index_.end() ? nullptr : &rules_[it->second];
}

RuleTable RuleTable::standard(const ToleranceConfig& tol) {
    const GateRegistry gates;
    RuleTable table;
    auto row = [&](const char* gate, int arity, Axis axis, int role, Term replacement,
                   Provenance provenance, std::string note = {}) {
        table.add(RewriteRule{gate, arity, axis, role, std::move(replacement), provenance, std::move(note)},
                  gates, tol);
    };
    constexpr auto Ref = Provenance::Reference;
    constexpr auto Der = Provenance::Derived;
    using enum Axis;

    // Standard table: Pauli, Hadamard, controlled-not, Toffoli.
    row("Z", 1, Z, 1, z(1), Ref);
    row("Z", 1, X, 1, neg(x(1)), Ref);
    row("X", 1, Z, 1, neg(z(1)), Ref);
    row("X", 1, X, 1, x(1), Ref);
    row("Y", 1, Z, 1, neg(z(1)), Ref);
    row("Y", 1, X, 1, neg(x(1)), Ref);
    row("H", 1, Z, 1, x(1), Ref);
    row("H", 1, X, 1, z(1), Ref);
    row("CNOT", 2, Z, 1, z(1), Ref);
    row("CNOT", 2, X, 1, xor_of(x(1), x(2)), Ref);
    row("CNOT", 2, X, 2, x(2), Ref);
    row("CNOT", 2, Z, 2, xor_of(z(2), z(1)), Ref);
    row("TOFFOLI", 3, Z, 1, z(1), Ref);
    row("TOFFOLI", 3, X, 1, xor_of(x(1), conj(z(2), x(3))), Ref);
    row("TOFFOLI", 3, Z, 2, z(2), Ref);
    row("TOFFOLI", 3, X, 2, xor_of(x(1), conj(z(1), x(3))), Ref);
    row("TOFFOLI", 3, X, 3, x(3), Ref);
    row("TOFFOLI", 3, Z, 3, xor_of(z(3), conj(z(1), z(2))), Ref);

    // Mirror of the x1 row under exchange of the two controls; stands in for
    // the reference x2 row when that one fails validation.
    if (!table.find("TOFFOLI", X, 2)) {
        row("TOFFOLI", 3, X, 2, xor_of(x(2), conj(z(1), x(3))), Der,
            "replaces reference row [TOFFOLI 1 2 3]x2 -||- x1 ^ z1 & x3");
        for (auto& r : table.rejected_) {
            if (r.rule.gate == "TOFFOLI" && r.rule.axis == X && r.rule.role == 2) {
                r.replaced_by = pretty(table.find("TOFFOLI", X, 2)->replacement);
            }
        }
    }

    // Controlled-Z, needed for phase corrections.
    row("CZ", 2, Z, 1, z(1), Der);
    row("CZ", 2, Z, 2, z(2), Der);
    row("CZ", 2, X, 1, xor_of(x(1), z(2)), Der);
    row("CZ", 2, X, 2, xor_of(x(2), z(1)), Der);

    // SWAP exchanges the two wires.
    for (Axis a : {Z, X, Y}) {
        row("SWAP", 2, a, 1, Term::atom(a, 2), Der);
        row("SWAP", 2, a, 2, Term::atom(a, 1), Der);
    }

    // y-axis rows. Each was found by discover_replacement and is re-checked here.
    row("Z", 1, Y, 1, neg(y(1)), Der);
    row("X", 1, Y, 1, neg(y(1)), Der);
    row("Y", 1, Y, 1, y(1), Der);
    row("H", 1, Y, 1, neg(y(1)), Der);
    row("CNOT", 2, Y, 1, xor_of(y(1), x(2)), Der);
    row("CNOT", 2, Y, 2, xor_of(y(2), z(1)), Der);
    row("CZ", 2, Y, 1, xor_of(y(1), z(2)), Der);
    row("CZ", 2, Y, 2, xor_of(y(2), z(1)), Der);
    row("TOFFOLI", 3, Y, 1, xor_of(y(1), conj(z(2), x(3))), Der);
    row("TOFFOLI", 3, Y, 2, xor_of(y(2), conj(z(1), x(3))), Der);
    row("TOFFOLI", 3, Y, 3, xor_of(y(3), conj(z(1), z(2))), Der);

    return table;
}

namespace {

Term distribute(const GateRef& gate, const Term& t, const RuleTable& table) {
    switch (t.kind()) {
        case TermKind::Top:
        case TermKind::Bottom: return t;
        case TermKind::Not: return Term::negation(distribute(gate, t.operand(), table));
        case TermKind::Atom: {
            const auto it = std::find(gate.wires.begin(), gate.wires.end(), t.qubit());
            if (it == gate.wires.end()) return t;
            const int role = static_cast<int>(it - gate.wires.begin()) + 1;
            if (const RewriteRule* rule = table.find(gate.name, t.axis(), role)) {
                return instantiate(rule->replacement, gate.wires);
            }
            return Term::apply(gate, t);
        }
        case TermKind::Apply:
        case TermKind::Meas:
            // Residual modality: nothing left to push into.
            return Term::apply(gate, t);
        default:
            return Term::binary(t.kind(), distribute(gate, t.lhs(), table),
                                distribute(gate, t.rhs(), table));
    }
}

const char* pauli_gate(Axis axis) {
    switch (axis) {
        case Axis::Z: return "Z";
        case Axis::X: return "X";
        case Axis::Y: return "Y";
    }
    return "Z";
}

bool is(const Term& t, TermKind k) { return t.kind() == k; }

// One local simplification at the root, or nullopt.
std::optional<Term> simplify_root(const Term& t) {
    switch (t.kind()) {
        case TermKind::Not:
            if (is(t.operand(), TermKind::Not)) return t.operand().operand();
            return std::nullopt;
        case TermKind::And:
            if (is(t.rhs(), TermKind::Top)) return t.lhs();
            if (is(t.lhs(), TermKind::Top)) return t.rhs();
            if (is(t.rhs(), TermKind::Bottom)) return t.rhs();
            if (is(t.lhs(), TermKind::Bottom)) return t.lhs();
            if (t.lhs() == t.rhs()) return t.lhs();
            return std::nullopt;
        case TermKind::Or:
            if (t.lhs() == t.rhs()) return t.lhs();
            if (is(t.rhs(), TermKind::Bottom)) return t.lhs();
            if (is(t.lhs(), TermKind::Bottom)) return t.rhs();
            return std::nullopt;
        case TermKind::Xor:
            if (is(t.rhs(), TermKind::Bottom)) return t.lhs();
            if (is(t.lhs(), TermKind::Bottom)) return t.rhs();
            return std::nullopt;
        default: return std::nullopt;
    }
}

Term simplify_pass(const Term& t) {
    Term rebuilt = t;
    switch (t.kind()) {
        case TermKind::Atom:
        case TermKind::Top:
        case TermKind::Bottom: break;
        case TermKind::Not: rebuilt = Term::negation(simplify_pass(t.operand()), t.position()); break;
        case TermKind::Apply: rebuilt = Term::apply(t.gate(), simplify_pass(t.operand()), t.position()); break;
        case TermKind::Meas:
            rebuilt = Term::measure(t.axis(), t.qubit(), simplify_pass(t.operand()), t.position());
            break;
        default:
            rebuilt = Term::binary(t.kind(), simplify_pass(t.lhs()), simplify_pass(t.rhs()), t.position());
            break;
    }
    if (auto reduced = simplify_root(rebuilt)) return *reduced;
    return rebuilt;
}

}  // namespace

Term push_dynamic(const Term& t, const RuleTable& table) {
    switch (t.kind()) {
        case TermKind::Atom:
        case TermKind::Top:
        case TermKind::Bottom: return t;
        case TermKind::Not: return Term::negation(push_dynamic(t.operand(), table));
        case TermKind::Apply: return distribute(t.gate(), push_dynamic(t.operand(), table), table);
        case TermKind::Meas: {
            const Term inner = push_dynamic(t.operand(), table);
            const GateRef observable{pauli_gate(t.axis()), {t.qubit()}};
            return disj(inner, distribute(observable, inner, table));
        }
        default:
            return Term::binary(t.kind(), push_dynamic(t.lhs(), table), push_dynamic(t.rhs(), table));
    }
}

Term simplify(const Term& t) {
    // Every productive pass removes at least one node.
    Term current = t;
    for (std::size_t budget = t.size() + 1; budget > 0; --budget) {
        Term next = simplify_pass(current);
        if (next == current) return next;
        current = std::move(next);
    }
    return current;
}

std::vector<std::pair<Term, Term>> simplification_instances(const Term& p) {
    const Term top = Term::top();
    const Term bot = Term::bottom();
    return {
        {neg(neg(p)), p},
        {conj(p, top), p},
        {conj(top, p), p},
        {conj(p, bot), bot},
        {conj(bot, p), bot},
        {disj(p, p), p},
        {conj(p, p), p},
        {xor_of(p, bot), p},
        {xor_of(bot, p), p},
        {disj(p, bot), p},
        {disj(bot, p), p},
    };
}

}  // namespace qlv
