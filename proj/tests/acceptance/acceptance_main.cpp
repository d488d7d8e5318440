// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "qlv/cli.hpp"
#include "qlv/gates.hpp"
#include "qlv/interpreter.hpp"
#include "qlv/parser.hpp"
#include "qlv/rewrite.hpp"
#include "qlv/script.hpp"
#include "support/oracle.hpp"

using namespace qlv;

namespace {

constexpr double kEps = 1e-8;

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << " -- " << detail << '\n';
    if (!ok) ++failures;
}

void criterion(int id, const std::string& title, const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    report(id, title, ok, detail.str());
}

// Distance in both directions between `s` and the span of one expected vector.
bool matches_single(const Subspace& s, const oracle::Vec& expected, std::ostringstream& d) {
    const StateVector v = oracle::to_state(expected).normalized();
    const double out_of_s = s.distance(v);
    const ComplexMatrix b = s.basis();
    double leak = 0;
    if (b.cols() == 1) leak = (b.col(0) - v * (v.adjoint() * b.col(0))(0)).norm();
    d << "dim " << s.rank() << ", residual " << std::max(out_of_s, leak);
    return s.rank() == 1 && out_of_s <= kEps && leak <= kEps;
}

int connectives(const Term& t) {
    switch (t.kind()) {
        case TermKind::Atom:
        case TermKind::Top:
        case TermKind::Bottom: return 0;
        case TermKind::Not:
        case TermKind::Apply:
        case TermKind::Meas: return 1 + connectives(t.operand());
        default: return 1 + connectives(t.lhs()) + connectives(t.rhs());
    }
}

std::string corpus(const char* name) { return std::string(QLV_CORPUS_DIR) + "/" + name; }

}  // namespace

int main() {
    const RuleTable table = RuleTable::standard();

    criterion(1, "EPR description", [](auto& d) {
        std::ostringstream out, err;
        const int code = run_cli({"qlv", "eval", "-n", "2", "(z1 <-> z2) & (x1 <-> x2)"}, out, err);
        const Subspace s = interpret(parse_term("(z1 <-> z2) & (x1 <-> x2)"), InterpContext(2));
        const bool ok = matches_single(s, {1.0, 0.0, 0.0, 1.0}, d);
        d << ", cli exit " << code;
        return ok && code == kExitOk && out.str().rfind("dim 1\n", 0) == 0;
    });

    criterion(2, "GHZ description", [](auto& d) {
        const Subspace s = interpret(parse_term("(z1 ^ z2 <-> bot) & (z1 ^ z3 <-> bot) & (x1 ^ x2 ^ x3 <-> bot)"),
                                     InterpContext(3));
        return matches_single(s, {1.0, 0, 0, 0, 0, 0, 0, 1.0}, d);
    });

    criterion(3, "EPR creation, numeric and symbolic", [&](auto& d) {
        const Script script = parse_script("qubits 2\nstage h: H 1\nstage cx: CNOT 1 2\n");
        const InterpContext ctx(2);
        const Subspace img = forward_image(interpret(parse_term("~z1 & ~z2"), ctx), script, 0, 2);
        const Subspace epr = interpret(parse_term("(x1 <-> x2) & (z1 <-> z2)"), ctx);
        const bool numeric = includes(img, epr) && includes(epr, img);
        const Term symbolic = simplify(push_dynamic(parse_term("[CNOT 1 2][H 1](~z1 & ~z2)"), table));
        const bool sym = equivalent(symbolic, parse_term("(x1 <-> x2) & (z1 <-> z2)"), ctx);
        d << "mutual inclusion " << numeric << ", symbolic " << pretty(symbolic);
        return numeric && sym;
    });

    criterion(4, "rewrite table validates for all wirings at n <= 4", [&](auto& d) {
        int bad = 0;
        for (const auto& rule : table.rules()) bad += !validate_rule_all_wirings(rule, 4);
        bool rejection_ok = table.rejected().size() == 1;
        if (rejection_ok) {
            const auto& rej = table.rejected().front();
            const RewriteRule* active = table.find(rej.rule.gate, rej.rule.axis, rej.rule.role);
            rejection_ok = rej.rule.gate == "TOFFOLI" && active != nullptr &&
                           validate_rule_all_wirings(*active, 4) &&
                           !validate_rule_all_wirings(rej.rule, 4);
            d << "rejected " << rej.rule.gate << " " << axis_letter(rej.rule.axis) << rej.rule.role
              << ", corrected row " << rej.replaced_by << "; ";
        }
        d << table.rules().size() << " rows, " << bad << " invalid";
        return bad == 0 && rejection_ok;
    });

    criterion(5, "unitary homomorphism laws (100 trials)", [](auto& d) {
        std::mt19937_64 rng(5);
        int bad = 0;
        for (int i = 0; i < 100; ++i) {
            const std::size_t dim = std::size_t{1} << (1 + i % 3);
            const ComplexMatrix u = oracle::random_unitary(rng, dim);
            const Subspace s = oracle::random_subspace(rng, dim);
            const Subspace t = oracle::random_subspace(rng, dim);
            const bool perp = equals(apply_unitary(u, complement(s)), complement(apply_unitary(u, s)));
            const bool meet = equals(apply_unitary(u, intersect(s, t)),
                                     intersect(apply_unitary(u, s), apply_unitary(u, t)));
            bad += !(perp && meet);
        }
        d << bad << " violations";
        return bad == 0;
    });

    criterion(6, "measurement closure is an upper closure operator (100 trials)", [](auto& d) {
        std::mt19937_64 rng(6);
        int bad = 0;
        for (int i = 0; i < 100; ++i) {
            const int n = 1 + i % 3;
            const int q = std::uniform_int_distribution<int>(1, n)(rng);
            const Subspace t = oracle::random_subspace(rng, std::size_t{1} << n);
            const Subspace s = oracle::random_subspace_of(rng, t);
            const Subspace cs = measurement_closure(s, Axis::Z, q, n);
            const Subspace ct = measurement_closure(t, Axis::Z, q, n);
            const bool extensive = includes(s, cs);
            const bool monotone = includes(cs, ct);
            const bool idempotent = equals(measurement_closure(cs, Axis::Z, q, n), cs);
            bad += !(extensive && monotone && idempotent);
        }
        d << bad << " violations";
        return bad == 0;
    });

    criterion(7, "entailment versus implication", [](auto& d) {
        const InterpContext one(1);
        const bool taut = tautology(implies(z(1), x(1)), one);
        const bool ent = entails(z(1), x(1), one);
        std::mt19937_64 rng(7);
        int hits = 0, bad = 0;
        for (int i = 0; i < 300; ++i) {
            oracle::TermGenOptions opt;
            opt.qubits = 1 + i % 3;
            opt.max_depth = 3;
            const InterpContext ctx(opt.qubits);
            const Term p = oracle::random_term(rng, opt);
            const Term q = (i % 2) ? disj(p, oracle::random_term(rng, opt)) : oracle::random_term(rng, opt);
            if (!entails(p, q, ctx)) continue;
            ++hits;
            bad += !tautology(implies(p, q), ctx);
        }
        d << "tautology(z->x) " << taut << ", entails(z,x) " << ent << ", " << hits << " entailing pairs, " << bad
          << " violations";
        return taut && !ent && bad == 0 && hits > 0;
    });

    criterion(8, "teleportation end to end", [](auto& d) {
        std::ostringstream out, err;
        const int code = run_cli({"qlv", "check", corpus("teleport.qlv")}, out, err);
        const bool cli_ok = code == kExitOk && out.str().find("4/4 assertions passed") != std::string::npos;

        // Independent state-vector simulation over all measurement outcomes.
        const double r = 1.0 / std::sqrt(2.0);
        const std::vector<oracle::Vec> inputs = {{0.0, 1.0}, {r, -r}};
        const std::vector<const char*> targets = {"z1", "x1"};
        int branches = 0, bad = 0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const Subspace want = interpret(parse_term(targets[i]), InterpContext(1));
            for (const auto& b : oracle::simulate_teleport(inputs[i])) {
                ++branches;
                bad += want.distance(oracle::to_state(b.bob)) > kEps;
            }
        }
        d << "cli exit " << code << ", " << branches << " simulated branches, " << bad << " mismatches";
        return cli_ok && branches == 8 && bad == 0;
    });

    criterion(9, "measuring an entailed outcome leaves nothing in its complement (50 trials)", [](auto& d) {
        std::mt19937_64 rng(9);
        int bad = 0;
        for (int i = 0; i < 50; ++i) {
            oracle::TermGenOptions opt;
            opt.qubits = 1 + i % 3;
            const int q = std::uniform_int_distribution<int>(1, opt.qubits)(rng);
            const Term p = conj(oracle::random_term(rng, opt), z(q));
            const InterpContext ctx(opt.qubits);
            if (!entails(p, z(q), ctx)) {
                ++bad;
                continue;
            }
            bad += !interpret(conj(Term::measure(Axis::Z, q, p), neg(z(q))), ctx).is_zero();
        }
        d << bad << " violations";
        return bad == 0;
    });

    criterion(10, "non-distributivity witness", [](auto& d) {
        const InterpContext ctx(1);
        const bool left = equivalent(parse_term("(z1 | ~z1) & x1"), x(1), ctx);
        const bool right = interpret(parse_term("(z1 & x1) | (~z1 & x1)"), ctx).is_zero();
        d << "lhs = x " << left << ", rhs = bot " << right;
        return left && right;
    });

    criterion(11, "parse after pretty is the identity (500 terms)", [](auto& d) {
        std::mt19937_64 rng(11);
        oracle::TermGenOptions opt;
        opt.qubits = 12;
        opt.max_depth = 8;
        int bad = 0;
        for (int i = 0; i < 500; ++i) {
            const Term t = oracle::random_term(rng, opt);
            bad += !(parse_term(pretty(t)) == t);
        }
        d << bad << " mismatches";
        return bad == 0;
    });

    criterion(12, "eval -n 10 on a 20-connective term under 10 s", [](auto& d) {
        const std::string text =
            "[H 1]((z1 <-> z2) & (x3 ^ x4) | ~(z5 -> y6) & [CNOT 7 8](x7 <-> z8)) ^ "
            "([mz 9](x9 | z10) & z1 | (y3 <-> y4) & (z5 ^ x6 ^ z7) -> x10)";
        const int count = connectives(parse_term(text));
        std::ostringstream out, err;
        const auto start = std::chrono::steady_clock::now();
        const int code = run_cli({"qlv", "eval", "-n", "10", text, "--limit", "1"}, out, err);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const std::string first = out.str().substr(0, out.str().find('\n'));
        d << count << " connectives, " << first << ", " << secs << " s";
        return count == 20 && code == kExitOk && secs < 10.0;
    });

    std::cout << (12 - failures) << "/12 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
