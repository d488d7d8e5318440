#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlv/subspace.hpp"

namespace qlv {

/// Pauli direction of an atomic proposition or a measurement.
enum class Axis { Z, X, Y };

char axis_letter(Axis axis);

/// 2 x 2 Pauli matrix for `axis`.
ComplexMatrix pauli(Axis axis);

struct GateDef {
    std::string name;
    int arity = 0;
    ComplexMatrix matrix;
    bool builtin = false;
};

using GatePtr = std::shared_ptr<const GateDef>;

/// Names accepted by builtin_gate, in display order.
std::span<const std::string_view> builtin_gate_names();

/// X, Y, Z, H, CNOT, CZ, SWAP, TOFFOLI. Throws ValidationError otherwise.
GateDef builtin_gate(std::string_view name);

/// Validates a user matrix (square, power-of-two size, unitary) and wraps it.
GateDef make_gate(std::string name, ComplexMatrix matrix, const ToleranceConfig& tol = {});

/// True iff `m` is square and `|M^dagger M - I|_max <= tol.ortho`.
bool validate_unitary(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Name -> gate lookup. Starts with every builtin; custom gates are added by
/// scripts before evaluation and the registry is treated as frozen afterwards.
class GateRegistry {
public:
    GateRegistry();

    /// Throws ValidationError if the name is already taken.
    void add(GateDef gate);

    GatePtr find(std::string_view name) const;

    /// Throws ValidationError for unknown names.
    GatePtr at(std::string_view name) const;

    std::vector<std::string> names() const;

private:
    std::map<std::string, GatePtr, std::less<>> gates_;
};

/// A gate placed on 1-based qubit wires. For controlled gates the controls
/// come first: CNOT(control, target), TOFFOLI(control, control, target).
struct GateApplication {
    GatePtr gate;
    std::vector<int> wires;

    /// Throws ValidationError unless wires are distinct, in 1..n, and match
    /// the arity.
    void validate(int n) const;
};

/// Applies a 2^a x 2^a matrix on `wires` to every column of `columns`, which
/// hold n-qubit vectors. Qubit 1 is the most significant bit of the basis
/// index; wires[0] is the most significant bit of the gate's local index.
void apply_local(const ComplexMatrix& gate, std::span<const int> wires, int n,
                 ComplexMatrix& columns);

/// Full 2^n x 2^n matrix of `app`.
ComplexMatrix embed(const GateApplication& app, int n);

/// Image of `s` under `app` without forming the 2^n x 2^n matrix.
Subspace apply_gate(const GateApplication& app, int n, const Subspace& s);

/// Closure of `s` under the Pauli observable on `qubit`.
Subspace measurement_closure(const Subspace& s, Axis axis, int qubit, int n,
                             const ToleranceConfig& tol = {});

/// Parses the matrix literal syntax `a+bi, c+di; e+fi, g+hi` (rows separated
/// by `;`, entries by `,`). Throws ParseError on malformed text.
ComplexMatrix parse_matrix_literal(std::string_view text);

/// Parses one complex scalar such as `0.5`, `-i`, `1e-3-2.5i`.
Complex parse_complex(std::string_view text);

}  // namespace qlv
