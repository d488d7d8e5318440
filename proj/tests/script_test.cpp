#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qlv/script.hpp"
#include "support/oracle.hpp"

namespace qlv {
namespace {

const char* kEpr = R"(qubits 2
stage s1: H 1
stage s2: CNOT 1 2
assert ~z1 & ~z2 @0 equiv (x1 <-> x2) & (z1 <-> z2) @2
)";

std::string corpus(const char* name) { return std::string(QLV_CORPUS_DIR) + "/" + name; }

template <class E>
void expect_error(const std::string& text, std::size_t line) {
    try {
        parse_script(text);
        FAIL() << "accepted:\n" << text;
    } catch (const E& e) {
        if constexpr (std::is_same_v<E, ParseError>) {
            EXPECT_EQ(e.line(), line) << e.what();
        } else {
            if (line > 0) EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)), std::string::npos) << e.what();
        }
    } catch (const Error& e) {
        FAIL() << "wrong error type: " << e.what();
    }
}

TEST(ParseScript, EprExample) {
    const Script s = parse_script(kEpr);
    EXPECT_EQ(s.qubits, 2);
    ASSERT_EQ(s.stages.size(), 2u);
    EXPECT_EQ(s.stages[0].name, "s1");
    EXPECT_EQ(s.stages[1].ops.size(), 1u);
    ASSERT_EQ(s.assertions.size(), 1u);
    const Assertion& a = s.assertions[0];
    EXPECT_EQ(a.from, 0u);
    EXPECT_EQ(a.to, 2u);
    EXPECT_EQ(a.relation, Relation::Equiv);
    EXPECT_EQ(a.line, 4u);
    EXPECT_EQ(a.lhs, conj(neg(z(1)), neg(z(2))));
}

TEST(ParseScript, FullGrammar) {
    const Script s = parse_script(R"(# comment line
qubits 3   # trailing comment
gate S = 1, 0; 0, i
stage prep: H 1 ; S 2
stage meas: measz 1; measx 2; measy 3
prop e23 = (z2 <-> z3) & (x2 <-> x3)
prop p = e23 & z1
assert p @prep entails [mz 1]p @meas
assert z1 @0 entailed-by bot @0
)");
    EXPECT_EQ(s.qubits, 3);
    ASSERT_EQ(s.stages.size(), 2u);
    EXPECT_EQ(s.stages[0].ops[1].gate.gate->name, "S");
    ASSERT_EQ(s.stages[1].ops.size(), 3u);
    EXPECT_EQ(s.stages[1].ops[1].kind, StageOp::Kind::Measure);
    EXPECT_EQ(s.stages[1].ops[1].axis, Axis::X);
    EXPECT_EQ(s.stages[1].ops[2].qubit, 3);
    EXPECT_EQ(s.props.size(), 2u);
    ASSERT_EQ(s.assertions.size(), 2u);
    EXPECT_EQ(s.assertions[0].from, 1u);
    EXPECT_EQ(s.assertions[0].to, 2u);
    EXPECT_EQ(s.assertions[1].relation, Relation::EntailedBy);
    EXPECT_STREQ(relation_name(Relation::EntailedBy), "entailed-by");
}

TEST(ParseScript, ReversedStagesAreRejected) {
    expect_error<ValidationError>(std::string(kEpr) + "assert z1 @2 equiv z1 @1\n", 5);
}

TEST(ParseScript, UnknownGateIsRejected) {
    expect_error<ValidationError>("qubits 2\nstage s: FOO 1\n", 2);
}

TEST(ParseScript, ValidationErrors) {
    expect_error<ValidationError>("stage s: H 1\n", 1);
    expect_error<ValidationError>("", 0);
    expect_error<ValidationError>("qubits 2\nstage s: H 3\n", 2);
    expect_error<ValidationError>("qubits 2\nstage s: CNOT 1 1\n", 2);
    expect_error<ValidationError>("qubits 2\nstage s: CNOT 1\n", 2);
    expect_error<ValidationError>("qubits 2\nstage s: H 1\nstage s: H 2\n", 3);
    expect_error<ValidationError>("qubits 2\nassert z1 @1 equiv z1 @1\n", 2);
    expect_error<ValidationError>("qubits 2\nassert z1 @0 equiv z3 @0\n", 2);
    expect_error<ValidationError>("qubits 2\nstage s: measz 4\n", 2);
    expect_error<ValidationError>("qubits 2\nprop a = z1\nprop a = z2\n", 3);
    expect_error<ValidationError>("qubits 2\nqubits 3\n", 2);
    expect_error<ValidationError>("qubits 1\ngate U = 1, 1; 0, 1\n", 2);
    expect_error<ValidationError>("qubits 1\ngate H = 1, 0; 0, 1\n", 2);
    expect_error<ValidationError>("qubits 1\nassert z1 @nowhere equiv z1 @0\n", 2);
}

TEST(ParseScript, SyntaxErrorsCarryLineAndColumn) {
    expect_error<ParseError>("qubits two\n", 1);
    expect_error<ParseError>("qubits 2\nstage : H 1\n", 2);
    expect_error<ParseError>("qubits 2\nbogus z1\n", 2);
    expect_error<ParseError>("qubits 2\nprop p = z1 &\n", 2);
    expect_error<ParseError>("qubits 2\nassert z1 @0 implies z1 @0\n", 2);
    expect_error<ParseError>("qubits 2\nassert z1 equiv z1\n", 2);
    expect_error<ParseError>("qubits 2\n\n\nassert z1 & @0 equiv z1 @0\n", 4);
    expect_error<ParseError>("qubits 1\ngate U = 1, 0; 0\n", 2);
    try {
        parse_script("qubits 2\nassert z1 & & z2 @0 equiv z1 @0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 13u);
    }
}

TEST(ParseScript, UnknownPropositionIsAnError) {
    EXPECT_THROW(parse_script("qubits 2\nassert bell @0 equiv z1 @0\n"), Error);
}

TEST(ForwardImage, EprCreation) {
    const Script s = parse_script(kEpr);
    const Subspace start = interpret(parse_term("~z1 & ~z2"), s.context());
    const Subspace img = forward_image(start, s, 0, 2);
    EXPECT_EQ(img.rank(), 1u);
    EXPECT_TRUE(oracle::same_span(img, {oracle::combo({{1.0, oracle::basis_vec(4, 0)}, {1.0, oracle::basis_vec(4, 3)}})}));
}

TEST(ForwardImage, EmptyFoldIsIdentity) {
    const Script s = parse_script(kEpr);
    std::mt19937_64 rng(1);
    for (std::size_t k = 0; k <= 2; ++k) {
        const Subspace t = oracle::random_subspace(rng, 4);
        std::vector<std::size_t> trace;
        EXPECT_TRUE(equals(forward_image(t, s, k, k, {}, &trace), t));
        EXPECT_EQ(trace, std::vector<std::size_t>{t.rank()});
    }
    EXPECT_THROW(forward_image(Subspace::full(4), s, 2, 1), ValidationError);
    EXPECT_THROW(forward_image(Subspace::full(4), s, 0, 3), ValidationError);
}

TEST(ForwardImage, TeleportPreservesZ) {
    const Script s = load_script(corpus("teleport.qlv"));
    const Subspace start = interpret(parse_term("z1 & (z2 <-> z3) & (x2 <-> x3)"), s.context());
    EXPECT_TRUE(includes(forward_image(start, s, 0, 4), interpret(z(3), s.context())));
}

TEST(CheckAssertion, EprPassesWithUnitDims) {
    const Script s = parse_script(kEpr);
    const AssertionResult r = check_assertion(s, s.assertions[0], s.context());
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.lhs_dim, 1u);
    EXPECT_EQ(r.rhs_dim, 1u);
    EXPECT_LE(r.max_residual, 1e-8);
    EXPECT_FALSE(r.counterexample.has_value());
    EXPECT_EQ(r.stage_dims, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(CheckAssertion, ConverseFailsWithKetOne) {
    const Script s = parse_script("qubits 1\nassert z1 @0 entails x1 @0\n");
    const AssertionResult r = check_assertion(s, s.assertions[0], s.context());
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_EQ(r.counterexample_side, "lhs");
    EXPECT_EQ(format_state(*r.counterexample, 1), "(1+0i)|1>");
    EXPECT_NEAR(r.max_residual, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(CheckAssertion, EntailedByChecksRightInsideLeft) {
    const Script s = parse_script("qubits 2\nassert z1 @0 entailed-by z1 & z2 @0\nassert z1 & z2 @0 entailed-by z1 @0\n");
    const auto results = check_script(s);
    EXPECT_TRUE(results[0].pass);
    EXPECT_FALSE(results[1].pass);
    EXPECT_EQ(results[1].counterexample_side, "rhs");
}

TEST(CheckAssertion, MeasurementInvarianceInTeleport) {
    const Script s = load_script(corpus("teleport.qlv"));
    const auto results = check_script(s);
    ASSERT_EQ(results.size(), 4u);
    for (std::size_t i = 0; i < results.size(); ++i) EXPECT_TRUE(results[i].pass) << s.assertions[i].text;
    // The measurement stage is the third one.
    EXPECT_EQ(s.assertions[2].from, 2u);
    EXPECT_EQ(s.assertions[2].to, 3u);
}

TEST(CheckAssertion, BundledCorpusPasses) {
    for (const char* name : {"epr.qlv", "ghz.qlv", "teleport.qlv", "teleport_unitary.qlv"}) {
        const Script s = load_script(corpus(name));
        for (const auto& r : check_script(s)) EXPECT_TRUE(r.pass) << name;
    }
    EXPECT_THROW(load_script(corpus("missing.qlv")), Error);
}

TEST(CheckAssertion, DeterministicAcrossOrder) {
    const Script s = load_script(corpus("teleport_unitary.qlv"));
    const auto forward = check_script(s);
    Script reversed = s;
    std::reverse(reversed.assertions.begin(), reversed.assertions.end());
    const auto backward = check_script(reversed);
    for (std::size_t i = 0; i < forward.size(); ++i) {
        const auto& b = backward[forward.size() - 1 - i];
        EXPECT_EQ(forward[i].pass, b.pass);
        EXPECT_EQ(forward[i].lhs_dim, b.lhs_dim);
        EXPECT_EQ(forward[i].max_residual, b.max_residual);
    }
}

// Teleportation cross-checked against explicit state-vector simulation: for
// random single-qubit inputs in each of the four z/x eigenstates, every
// measurement branch hands Bob the input state.
TEST(TeleportOracle, EveryBranchDeliversTheInput) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<oracle::Vec> inputs = {{0.0, 1.0}, {1.0, 0.0}, {r, -r}, {r, r}};
    for (const auto& in : inputs) {
        const auto branches = oracle::simulate_teleport(in);
        EXPECT_EQ(branches.size(), 4u);
        double total = 0;
        for (const auto& b : branches) {
            total += b.probability;
            EXPECT_NEAR(std::abs(oracle::dot(in, b.bob)), 1.0, 1e-12) << b.m1 << b.m2;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(TeleportOracle, SubspaceVerdictsAgreeWithSimulation) {
    // The precondition z1 & E23 at stage 0 is spanned by |1>(x)bell; its image
    // under the corpus stages must lie inside z3, and every simulated branch
    // must leave Bob in the -1 eigenstate of z.
    const Script s = load_script(corpus("teleport.qlv"));
    const InterpContext ctx = s.context();
    const std::vector<std::pair<const char*, const char*>> cases = {
        {"z1", "z3"}, {"~z1", "~z3"}, {"x1", "x3"}, {"~x1", "~x3"}};
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<oracle::Vec> states = {{0.0, 1.0}, {1.0, 0.0}, {r, -r}, {r, r}};
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Term pre = conj(parse_term(cases[i].first), parse_term("(z2 <-> z3) & (x2 <-> x3)"));
        const Subspace img = forward_image(interpret(pre, ctx), s, 0, 4);
        const Subspace target = interpret(parse_term(cases[i].second), ctx);
        EXPECT_TRUE(includes(img, target)) << cases[i].first;

        const Subspace bob_target = interpret(parse_term(cases[i].second == std::string("z3") ? "z1"
                                                         : cases[i].second == std::string("~z3") ? "~z1"
                                                         : cases[i].second == std::string("x3") ? "x1"
                                                                                                 : "~x1"),
                                              InterpContext(1));
        for (const auto& b : oracle::simulate_teleport(states[i])) {
            EXPECT_LE(bob_target.distance(oracle::to_state(b.bob)), 1e-12) << cases[i].first << " branch " << b.m1 << b.m2;
        }
    }
}

// ---------------------------------------------------------------------------
// Properties of the forward image.

TEST(ForwardImageLaws, MonotoneAndDimensionProfile) {
    const Script s = load_script(corpus("teleport.qlv"));
    std::mt19937_64 rng(99);
    for (int i = 0; i < 30; ++i) {
        const Subspace t = oracle::random_subspace(rng, 8);
        const Subspace u = oracle::random_subspace_of(rng, t);
        EXPECT_TRUE(includes(forward_image(u, s, 0, 4), forward_image(t, s, 0, 4)));
        std::vector<std::size_t> trace;
        forward_image(t, s, 0, 4, {}, &trace);
        ASSERT_EQ(trace.size(), 5u);
        for (std::size_t k = 1; k < trace.size(); ++k) {
            const bool measuring = s.stages[k - 1].ops.front().kind == StageOp::Kind::Measure;
            if (measuring) {
                EXPECT_GE(trace[k], trace[k - 1]);
            } else {
                EXPECT_EQ(trace[k], trace[k - 1]);
            }
        }
    }
}

TEST(Format, ComplexAndStates) {
    EXPECT_EQ(format_complex(Complex(0.5, -0.25)), "0.5-0.25i");
    EXPECT_EQ(format_complex(Complex(1.0 / 3.0, 0)), "0.333333+0i");
    StateVector v(4);
    v << Complex(0, 1) / std::sqrt(2.0), 0, 0, Complex(0, 1) / std::sqrt(2.0);
    EXPECT_EQ(format_state(v, 2), "(0.707107+0i)|00> + (0.707107+0i)|11>");
    EXPECT_EQ(format_state_dense(v), "0.707107+0i 0+0i 0+0i 0.707107+0i");
}

}  // namespace
}  // namespace qlv
