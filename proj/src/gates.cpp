#include "qlv/gates.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace qlv {

namespace {

constexpr std::array<std::string_view, 8> kBuiltinNames = {"X",    "Y",  "Z",    "H",
                                                           "CNOT", "CZ", "SWAP", "TOFFOLI"};

ComplexMatrix permutation(std::initializer_list<int> image) {
    const auto d = static_cast<Eigen::Index>(image.size());
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    Eigen::Index col = 0;
    for (int row : image) m(row, col++) = 1.0;
    return m;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

[[noreturn]] void literal_error(std::string message, std::size_t offset) {
    throw ParseError(std::move(message), offset, 1, offset + 1);
}

// Parses a real number prefix of `s`; returns the number of characters used.
std::size_t parse_real(std::string_view s, double& value) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || !std::isfinite(value)) return 0;
    return static_cast<std::size_t>(ptr - s.data());
}

}  // namespace

char axis_letter(Axis axis) {
    switch (axis) {
        case Axis::Z: return 'z';
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
    }
    return '?';
}

ComplexMatrix pauli(Axis axis) {
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    switch (axis) {
        case Axis::X: m << 0.0, 1.0, 1.0, 0.0; break;
        case Axis::Y: m << 0.0, -i, i, 0.0; break;
        case Axis::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

std::span<const std::string_view> builtin_gate_names() { return kBuiltinNames; }

GateDef builtin_gate(std::string_view name) {
    GateDef g;
    g.name = std::string(name);
    g.builtin = true;
    if (name == "X") {
        g.arity = 1;
        g.matrix = pauli(Axis::X);
    } else if (name == "Y") {
        g.arity = 1;
        g.matrix = pauli(Axis::Y);
    } else if (name == "Z") {
        g.arity = 1;
        g.matrix = pauli(Axis::Z);
    } else if (name == "H") {
        g.arity = 1;
        g.matrix.resize(2, 2);
        g.matrix << 1.0, 1.0, 1.0, -1.0;
        g.matrix *= 1.0 / std::numbers::sqrt2;
    } else if (name == "CNOT") {
        g.arity = 2;
        g.matrix = permutation({0, 1, 3, 2});
    } else if (name == "CZ") {
        g.arity = 2;
        g.matrix = ComplexMatrix::Identity(4, 4);
        g.matrix(3, 3) = -1.0;
    } else if (name == "SWAP") {
        g.arity = 2;
        g.matrix = permutation({0, 2, 1, 3});
    } else if (name == "TOFFOLI") {
        g.arity = 3;
        g.matrix = permutation({0, 1, 2, 3, 4, 5, 7, 6});
    } else {
        throw ValidationError("unknown gate '" + std::string(name) + "'");
    }
    return g;
}

bool validate_unitary(const ComplexMatrix& m, const ToleranceConfig& tol) {
    return is_unitary(m, tol);
}

GateDef make_gate(std::string name, ComplexMatrix matrix, const ToleranceConfig& tol) {
    const auto size = static_cast<unsigned long>(matrix.rows());
    if (matrix.rows() != matrix.cols() || size < 2 || !std::has_single_bit(size)) {
        throw ValidationError("gate " + name + ": matrix must be square with a power-of-two size >= 2");
    }
    if (!validate_unitary(matrix, tol)) {
        throw ValidationError("gate " + name + ": matrix is not unitary");
    }
    GateDef g;
    g.name = std::move(name);
    g.arity = std::countr_zero(size);
    g.matrix = std::move(matrix);
    return g;
}

GateRegistry::GateRegistry() {
    for (auto name : kBuiltinNames) {
        gates_.emplace(std::string(name), std::make_shared<const GateDef>(builtin_gate(name)));
    }
}

void GateRegistry::add(GateDef gate) {
    if (gates_.contains(gate.name)) {
        throw ValidationError("gate '" + gate.name + "' is already defined");
    }
    auto name = gate.name;
    gates_.emplace(std::move(name), std::make_shared<const GateDef>(std::move(gate)));
}

GatePtr GateRegistry::find(std::string_view name) const {
    auto it = gates_.find(name);
    return it == gates_.end() ? nullptr : it->second;
}

GatePtr GateRegistry::at(std::string_view name) const {
    auto g = find(name);
    if (!g) throw ValidationError("unknown gate '" + std::string(name) + "'");
    return g;
}

std::vector<std::string> GateRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : gates_) out.push_back(name);
    return out;
}

void GateApplication::validate(int n) const {
    if (!gate) throw ValidationError("gate application without a gate");
    if (static_cast<int>(wires.size()) != gate->arity) {
        throw ValidationError("gate " + gate->name + " expects " + std::to_string(gate->arity) +
                              " wire(s), got " + std::to_string(wires.size()));
    }
    std::set<int> seen;
    for (int w : wires) {
        if (w < 1 || w > n) {
            throw ValidationError("gate " + gate->name + ": wire " + std::to_string(w) +
                                  " out of range 1.." + std::to_string(n));
        }
        if (!seen.insert(w).second) {
            throw ValidationError("gate " + gate->name + ": duplicate wire " + std::to_string(w));
        }
    }
}

void apply_local(const ComplexMatrix& gate, std::span<const int> wires, int n,
                 ComplexMatrix& columns) {
    const auto a = static_cast<int>(wires.size());
    const Eigen::Index local = Eigen::Index{1} << a;
    const Eigen::Index d = Eigen::Index{1} << n;
    if (gate.rows() != local || gate.cols() != local || columns.rows() != d) {
        throw DimensionError("apply_local: gate or vector size mismatch");
    }

    std::vector<Eigen::Index> offsets(static_cast<std::size_t>(local), 0);
    Eigen::Index wire_mask = 0;
    for (int r = 0; r < a; ++r) {
        const Eigen::Index bit = Eigen::Index{1} << (n - wires[static_cast<std::size_t>(r)]);
        wire_mask |= bit;
        for (Eigen::Index l = 0; l < local; ++l) {
            if ((l >> (a - 1 - r)) & 1) offsets[static_cast<std::size_t>(l)] |= bit;
        }
    }

    Eigen::VectorXcd in(local);
    Eigen::VectorXcd out(local);
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        auto col = columns.col(c);
        for (Eigen::Index base = 0; base < d; ++base) {
            if (base & wire_mask) continue;
            for (Eigen::Index l = 0; l < local; ++l) in(l) = col(base + offsets[static_cast<std::size_t>(l)]);
            out.noalias() = gate * in;
            for (Eigen::Index l = 0; l < local; ++l) col(base + offsets[static_cast<std::size_t>(l)]) = out(l);
        }
    }
}

ComplexMatrix embed(const GateApplication& app, int n) {
    app.validate(n);
    const Eigen::Index d = Eigen::Index{1} << n;
    ComplexMatrix m = ComplexMatrix::Identity(d, d);
    apply_local(app.gate->matrix, app.wires, n, m);
    return m;
}

Subspace apply_gate(const GateApplication& app, int n, const Subspace& s) {
    app.validate(n);
    if (s.ambient_dim() != (std::size_t{1} << n)) {
        throw DimensionError("apply_gate: subspace does not live on " + std::to_string(n) + " qubits");
    }
    ComplexMatrix defect = app.gate->matrix.adjoint() * app.gate->matrix;
    defect.diagonal().array() -= 1.0;
    const bool exact = defect.cwiseAbs().maxCoeff() <= 1e-13;
    return apply_action(
        [&](ComplexMatrix& m) { apply_local(app.gate->matrix, app.wires, n, m); }, s, !exact);
}

Subspace measurement_closure(const Subspace& s, Axis axis, int qubit, int n,
                             const ToleranceConfig& tol) {
    if (qubit < 1 || qubit > n) {
        throw ValidationError("measurement wire " + std::to_string(qubit) + " out of range 1.." +
                              std::to_string(n));
    }
    const ComplexMatrix p = pauli(axis);
    const std::array<int, 1> wires{qubit};
    return closure_action(s, [&](ComplexMatrix& m) { apply_local(p, wires, n, m); }, tol);
}

Complex parse_complex(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) literal_error("empty complex number", 0);

    // Imaginary-only forms: "i", "-i", "+i", "2.5i".
    if (s.back() == 'i') {
        const std::string_view body = s.substr(0, s.size() - 1);
        // Split "a+bi" at the last sign that is not part of an exponent.
        std::size_t split = std::string_view::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        double re = 0.0;
        std::string_view imag = body;
        if (split != std::string_view::npos) {
            const std::string_view real = trim(body.substr(0, split));
            if (parse_real(real, re) != real.size() || real.empty()) {
                literal_error("malformed real part '" + std::string(real) + "'", 0);
            }
            imag = body.substr(split);
        }
        imag = trim(imag);
        double im = 0.0;
        if (imag.empty() || imag == "+") {
            im = 1.0;
        } else if (imag == "-") {
            im = -1.0;
        } else {
            std::string compact;
            for (char c : imag) {
                if (!is_space(c)) compact.push_back(c);
            }
            if (parse_real(compact, im) != compact.size()) {
                literal_error("malformed imaginary part '" + std::string(imag) + "i'", 0);
            }
        }
        return {re, im};
    }
    double re = 0.0;
    if (parse_real(s, re) != s.size()) {
        literal_error("malformed complex number '" + std::string(s) + "'", 0);
    }
    return {re, 0.0};
}

ComplexMatrix parse_matrix_literal(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::size_t row_start = 0;
    while (row_start <= text.size()) {
        std::size_t row_end = text.find(';', row_start);
        if (row_end == std::string_view::npos) row_end = text.size();
        std::vector<Complex> row;
        std::size_t entry_start = row_start;
        while (entry_start <= row_end) {
            std::size_t entry_end = text.find(',', entry_start);
            if (entry_end == std::string_view::npos || entry_end > row_end) entry_end = row_end;
            const std::string_view entry = text.substr(entry_start, entry_end - entry_start);
            try {
                row.push_back(parse_complex(entry));
            } catch (const ParseError& e) {
                std::size_t lead = 0;
                while (lead < entry.size() && is_space(entry[lead])) ++lead;
                literal_error(e.message(), entry_start + lead);
            }
            entry_start = entry_end + 1;
        }
        rows.push_back(std::move(row));
        row_start = row_end + 1;
    }

    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = rows.front().size();
    ComplexMatrix m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (rows[r].size() != n_cols) {
            literal_error("matrix row " + std::to_string(r + 1) + " has " +
                              std::to_string(rows[r].size()) + " entries, expected " +
                              std::to_string(n_cols),
                          0);
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

}  // namespace qlv
