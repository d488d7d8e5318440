#pragma once

#include <memory>

#include "qlv/gates.hpp"
#include "qlv/subspace.hpp"
#include "qlv/term.hpp"

namespace qlv {

/// Largest supported register; 2^12 amplitudes per basis vector.
inline constexpr int kMaxQubits = 12;

/// Evaluation environment: the register size, the gates in scope, and the
/// numerical tolerances. Immutable once built.
class InterpContext {
public:
    explicit InterpContext(int qubits, ToleranceConfig tol = {},
                           std::shared_ptr<const GateRegistry> gates = nullptr);

    int qubits() const { return qubits_; }
    std::size_t dim() const { return std::size_t{1} << qubits_; }
    const GateRegistry& gates() const { return *gates_; }
    const ToleranceConfig& tol() const { return tol_; }

    /// Resolves a gate reference and checks its wires against the register.
    GateApplication resolve(const GateRef& ref) const;

private:
    int qubits_;
    ToleranceConfig tol_;
    std::shared_ptr<const GateRegistry> gates_;
};

/// The subspace of states on which `axis` reads -1 on `qubit`, tensored with
/// the full space on every other wire.
Subspace atom_subspace(Axis axis, int qubit, int n);

/// Denotation of `t` as a closed subspace of the 2^n-dimensional register.
/// Throws ValidationError for qubits beyond the register or unknown gates.
Subspace interpret(const Term& t, const InterpContext& ctx);

/// [[p]] is a subset of [[q]].
bool entails(const Term& p, const Term& q, const InterpContext& ctx);

/// [[p]] == [[q]].
bool equivalent(const Term& p, const Term& q, const InterpContext& ctx);

/// [[p]] is the whole space.
bool tautology(const Term& p, const InterpContext& ctx);

}  // namespace qlv
