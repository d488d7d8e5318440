#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlv/interpreter.hpp"
#include "qlv/parser.hpp"

namespace qlv {

struct StageOp {
    enum class Kind { Gate, Measure };

    Kind kind = Kind::Gate;
    GateApplication gate;  // Kind::Gate
    Axis axis = Axis::Z;   // Kind::Measure
    int qubit = 0;         // Kind::Measure
    std::string text;      // as written, for traces
};

struct Stage {
    std::string name;
    std::vector<StageOp> ops;
    std::size_t line = 0;
};

enum class Relation { Equiv, Entails, EntailedBy };

const char* relation_name(Relation r);

/// `lhs @from relation rhs @to`. Stage index 0 is the state before the first
/// stage; index k is the state after the k-th stage. The left-hand side is
/// pushed forward from `from` to `to` and compared with the right-hand side.
struct Assertion {
    Term lhs = Term::top();
    std::size_t from = 0;
    Relation relation = Relation::Equiv;
    Term rhs = Term::top();
    std::size_t to = 0;
    std::size_t line = 0;
    std::string text;
};

/// A parsed `.qlv` script. Immutable after parse_script.
struct Script {
    int qubits = 0;
    std::shared_ptr<const GateRegistry> gates;
    std::vector<Stage> stages;
    PropEnv props;
    std::vector<Assertion> assertions;

    InterpContext context(const ToleranceConfig& tol = {}) const;
};

/// Parses the line-oriented script format:
///
///     qubits N
///     gate NAME = a+bi, c+di; e+fi, g+hi
///     stage NAME: GATE w1 w2 ... ; measz w ; ...
///     prop NAME = <term>
///     assert <term> @A (equiv|entails|entailed-by) <term> @B
///
/// `#` starts a comment. Stage references may be indices or stage names.
/// Throws ParseError (with line and column) for malformed lines and
/// ValidationError for well-formed lines that reference unknown gates,
/// wires, propositions or stages.
Script parse_script(std::string_view text);

/// Reads and parses a script file. Throws Error if the file cannot be read.
Script load_script(const std::string& path);

/// Folds stages from+1..to over `s`: gates map the subspace through their
/// unitary, measurements replace it by its measurement closure. When `trace`
/// is given it receives the dimension at every stage boundary from..to.
Subspace forward_image(const Subspace& s, const Script& script, std::size_t from, std::size_t to,
                       const ToleranceConfig& tol = {}, std::vector<std::size_t>* trace = nullptr);

struct AssertionResult {
    bool pass = false;
    std::size_t lhs_dim = 0;
    std::size_t rhs_dim = 0;
    double max_residual = 0.0;
    /// Basis vector of the side that failed to be included, with the largest
    /// projection residual. Present iff the assertion failed.
    std::optional<StateVector> counterexample;
    std::string counterexample_side;
    std::vector<std::size_t> stage_dims;
};

AssertionResult check_assertion(const Script& script, const Assertion& assertion,
                                const InterpContext& ctx);

/// Checks every assertion in script order.
std::vector<AssertionResult> check_script(const Script& script, const ToleranceConfig& tol = {});

/// `a+bi` with 6 significant digits.
std::string format_complex(Complex c);

/// Non-negligible amplitudes in ket notation, e.g. `(0.707107+0i)|00> + (0.707107+0i)|11>`,
/// after rotating the global phase so the first such amplitude is real and positive.
std::string format_state(const StateVector& v, int qubits);

/// Every amplitude, space separated, same phase convention as format_state.
std::string format_state_dense(const StateVector& v);

}  // namespace qlv
