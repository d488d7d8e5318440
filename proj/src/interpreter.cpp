#include "qlv/interpreter.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qlv {

InterpContext::InterpContext(int qubits, ToleranceConfig tol,
                             std::shared_ptr<const GateRegistry> gates)
    : qubits_(qubits), tol_(tol), gates_(std::move(gates)) {
    if (qubits_ < 1 || qubits_ > kMaxQubits) {
        throw ValidationError("qubit count must be in 1.." + std::to_string(kMaxQubits) + ", got " +
                              std::to_string(qubits_));
    }
    tol_.validate(dim());
    if (!gates_) gates_ = std::make_shared<const GateRegistry>();
}

GateApplication InterpContext::resolve(const GateRef& ref) const {
    GateApplication app{gates_->at(ref.name), ref.wires};
    app.validate(qubits_);
    return app;
}

Subspace atom_subspace(Axis axis, int qubit, int n) {
    if (qubit < 1 || qubit > n) {
        throw ValidationError("qubit " + std::to_string(qubit) + " is outside the " +
                              std::to_string(n) + "-qubit register");
    }
    const Eigen::Index d = Eigen::Index{1} << n;
    const Eigen::Index bit = Eigen::Index{1} << (n - qubit);
    ComplexMatrix basis = ComplexMatrix::Zero(d, d / 2);
    const double h = 1.0 / std::numbers::sqrt2;
    Eigen::Index col = 0;
    for (Eigen::Index idx = 0; idx < d; ++idx) {
        if (idx & bit) continue;
        switch (axis) {
            case Axis::Z: basis(idx | bit, col) = 1.0; break;
            case Axis::X:
                basis(idx, col) = h;
                basis(idx | bit, col) = -h;
                break;
            case Axis::Y:
                basis(idx, col) = h;
                basis(idx | bit, col) = Complex(0.0, -h);
                break;
        }
        ++col;
    }
    return Subspace::from_parts(std::move(basis), false);
}

namespace {

Subspace eval(const Term& t, const InterpContext& ctx) {
    const auto& tol = ctx.tol();
    switch (t.kind()) {
        case TermKind::Atom: return atom_subspace(t.axis(), t.qubit(), ctx.qubits());
        case TermKind::Top: return Subspace::full(ctx.dim());
        case TermKind::Bottom: return Subspace::zero(ctx.dim());
        case TermKind::Not: return complement(eval(t.operand(), ctx));
        case TermKind::And: return intersect(eval(t.lhs(), ctx), eval(t.rhs(), ctx), tol);
        case TermKind::Or: return sum(eval(t.lhs(), ctx), eval(t.rhs(), ctx), tol);
        case TermKind::Imp: return sum(complement(eval(t.lhs(), ctx)), eval(t.rhs(), ctx), tol);
        case TermKind::Iff:
        case TermKind::Xor: {
            const Subspace p = eval(t.lhs(), ctx);
            const Subspace q = eval(t.rhs(), ctx);
            const Subspace equal = intersect(sum(complement(p), q, tol), sum(complement(q), p, tol), tol);
            return t.kind() == TermKind::Iff ? equal : complement(equal);
        }
        case TermKind::Apply:
            return apply_gate(ctx.resolve(t.gate()), ctx.qubits(), eval(t.operand(), ctx));
        case TermKind::Meas:
            return measurement_closure(eval(t.operand(), ctx), t.axis(), t.qubit(), ctx.qubits(), tol);
    }
    throw ValidationError("unhandled term kind");
}

}  // namespace

Subspace interpret(const Term& t, const InterpContext& ctx) {
    if (const int q = t.max_qubit(); q > ctx.qubits()) {
        throw ValidationError("term mentions qubit " + std::to_string(q) + " but the register has " +
                              std::to_string(ctx.qubits()) + " qubit(s)");
    }
    return eval(t, ctx);
}

bool entails(const Term& p, const Term& q, const InterpContext& ctx) {
    return includes(interpret(p, ctx), interpret(q, ctx), ctx.tol());
}

bool equivalent(const Term& p, const Term& q, const InterpContext& ctx) {
    return equals(interpret(p, ctx), interpret(q, ctx), ctx.tol());
}

bool tautology(const Term& p, const InterpContext& ctx) {
    return includes(Subspace::full(ctx.dim()), interpret(p, ctx), ctx.tol());
}

}  // namespace qlv
