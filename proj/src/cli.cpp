#include "qlv/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <optional>

#include "qlv/interpreter.hpp"
#include "qlv/parser.hpp"
#include "qlv/rewrite.hpp"
#include "qlv/script.hpp"

namespace qlv {

namespace {

std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", r);
    return buf;
}

ToleranceConfig tolerances(const std::optional<double>& tol) {
    return tol ? ToleranceConfig::scaled(*tol) : ToleranceConfig{};
}

int cmd_check(const std::string& path, const std::optional<double>& tol, bool trace, std::ostream& out) {
    const Script script = load_script(path);
    const InterpContext ctx = script.context(tolerances(tol));

    std::size_t passed = 0;
    for (const auto& a : script.assertions) {
        const AssertionResult r = check_assertion(script, a, ctx);
        passed += r.pass ? 1 : 0;
        out << (r.pass ? "[PASS]" : "[FAIL]") << " line " << a.line << ": " << a.text << '\n';
        out << "       lhs dim " << r.lhs_dim << ", rhs dim " << r.rhs_dim << ", max residual "
            << format_residual(r.max_residual) << '\n';
        if (trace) {
            out << "       trace:";
            for (std::size_t i = 0; i < r.stage_dims.size(); ++i) {
                const std::size_t stage = a.from + i;
                out << (i == 0 ? " " : " | ") << '@' << stage;
                if (stage > 0) out << ' ' << script.stages[stage - 1].name;
                out << " dim " << r.stage_dims[i];
            }
            out << '\n';
        }
        if (r.counterexample) {
            out << "       counterexample (" << r.counterexample_side << "): "
                << format_state(*r.counterexample, script.qubits) << '\n';
        }
    }
    out << passed << '/' << script.assertions.size() << " assertions passed\n";
    return passed == script.assertions.size() ? kExitOk : kExitFailed;
}

int cmd_eval(int n, const std::string& text, const std::optional<double>& tol, bool dense,
             std::optional<std::size_t> limit, std::ostream& out) {
    const InterpContext ctx(n, tolerances(tol));
    const Subspace s = interpret(parse_term(text), ctx);
    out << "dim " << s.rank() << '\n';
    const ComplexMatrix basis = s.basis();
    const std::size_t shown = std::min<std::size_t>(s.rank(), limit.value_or(s.rank()));
    for (std::size_t i = 0; i < shown; ++i) {
        const StateVector v = basis.col(static_cast<Eigen::Index>(i));
        out << 'v' << (i + 1) << " = " << (dense ? format_state_dense(v) : format_state(v, n)) << '\n';
    }
    if (shown < s.rank()) out << "... " << (s.rank() - shown) << " more\n";
    return kExitOk;
}

int cmd_entail(int n, const std::string& p_text, const std::string& q_text,
               const std::optional<double>& tol, std::ostream& out) {
    const InterpContext ctx(n, tolerances(tol));
    const Subspace p = interpret(parse_term(p_text), ctx);
    const Subspace q = interpret(parse_term(q_text), ctx);
    const bool holds = includes(p, q, ctx.tol());
    out << (holds ? "HOLDS" : "FAILS") << '\n';
    const InclusionResidual r = inclusion_residual(p, q);
    out << "dim p " << p.rank() << ", dim q " << q.rank() << ", max residual "
        << format_residual(r.max_residual) << '\n';
    if (!holds) out << "counterexample: " << format_state(r.worst_vector, n) << '\n';
    return holds ? kExitOk : kExitFailed;
}

void print_rule(const RewriteRule& rule, std::ostream& out) {
    const std::string row = pretty(rule.lhs()) + " -||- " + pretty(rule.replacement);
    out << std::left << std::setw(9) << rule.gate << std::setw(40) << row << std::setw(11)
        << provenance_name(rule.provenance);
}

int cmd_rules(std::ostream& out) {
    const RuleTable table = RuleTable::standard();
    out << std::left << std::setw(9) << "gate" << std::setw(40) << "row" << std::setw(11)
        << "source" << "status\n";
    for (const auto& rule : table.rules()) {
        print_rule(rule, out);
        out << "validated";
        if (!rule.note.empty()) out << " (" << rule.note << ')';
        out << '\n';
    }
    for (const auto& rejected : table.rejected()) {
        print_rule(rejected.rule, out);
        out << "REJECTED";
        if (!rejected.replaced_by.empty()) out << " (superseded by " << rejected.replaced_by << ')';
        out << '\n';
    }
    out << table.rules().size() << " rows validated, " << table.rejected().size() << " rejected\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamic quantum logic checker"};
    app.require_subcommand(1);

    std::optional<double> tol;
    std::string file;
    bool trace = false;
    auto* check = app.add_subcommand("check", "Check every assertion of a .qlv script");
    check->add_option("file", file, "Script to check")->required();
    check->add_option("--tol", tol, "Inclusion tolerance; the other tolerances scale with it")
        ->check(CLI::PositiveNumber);
    check->add_flag("--trace", trace, "Print the subspace dimension after each stage");

    int qubits = 0;
    std::string term;
    bool dense = false;
    std::optional<std::size_t> limit;
    auto* eval = app.add_subcommand("eval", "Print the subspace denoted by a term");
    eval->add_option("-n,--qubits", qubits, "Register size")->required();
    eval->add_option("term", term, "Proposition")->required();
    eval->add_option("--tol", tol, "Inclusion tolerance")->check(CLI::PositiveNumber);
    eval->add_flag("--dense", dense, "Print every amplitude instead of ket notation");
    eval->add_option("--limit", limit, "Print at most this many basis vectors");

    std::string premise;
    std::string conclusion;
    auto* entail = app.add_subcommand("entail", "Decide whether p entails q");
    entail->add_option("-n,--qubits", qubits, "Register size")->required();
    entail->add_option("p", premise, "Premise")->required();
    entail->add_option("q", conclusion, "Conclusion")->required();
    entail->add_option("--tol", tol, "Inclusion tolerance")->check(CLI::PositiveNumber);

    auto* rules = app.add_subcommand("rules", "Print the validated rewrite table");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (check->parsed()) return cmd_check(file, tol, trace, out);
        if (eval->parsed()) return cmd_eval(qubits, term, tol, dense, limit, out);
        if (entail->parsed()) return cmd_entail(qubits, premise, conclusion, tol, out);
        if (rules->parsed()) return cmd_rules(out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}

}  // namespace qlv
