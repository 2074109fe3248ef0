#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gilliant/fuzz.hpp"
#include "gilliant/soundness.hpp"
#include "gilliant/while_compile.hpp"
#include "gilliant/while_parse.hpp"
#include "helpers.hpp"

using namespace gilliant;
using namespace gilliant::testing;

namespace {

AnnotatedProgram compileSrc(const std::string& src) {
    wl::WhileCompiler c;
    return c.compileProgram(wl::parseWhile(src));
}

WhileSymbolicState randomState(Rng& rng, const WhileSymbolicState& base, int extra) {
    WhileSymbolicState out = base;
    for (int i = 0; i < extra; ++i) {
        switch (randInt(rng, 0, 2)) {
            case 0:
                out.pc.push_back(eq(lv("#p" + std::to_string(randInt(rng, 0, 3))),
                                    num(randInt(rng, 0, 5))));
                break;
            case 1: {
                auto [rec, _] = out.allocRecord.alloc(static_cast<int>(randInt(rng, 0, 2)),
                                                      chance(rng, 0.5)
                                                          ? Universe::UninterpretedSymbols
                                                          : Universe::LogicalVars);
                out.allocRecord = std::move(rec);
                break;
            }
            default:
                out.pc.push_back(lt(lv("#p" + std::to_string(randInt(rng, 0, 3))),
                                    num(randInt(rng, 2, 9))));
                break;
        }
    }
    return out;
}

std::string stateKey(const WhileSymbolicState& st) {
    return canonicalSymbolicState(st) + "|" + st.allocRecord.show();
}

}  // namespace

TEST_CASE("restrict: pc concatenation and record scripting") {
    WhileSymbolicState a;
    a.pc.push_back(eq(lv("#x"), num(1)));
    a.memory.add({sym("$l"), "p", lv("#x")});
    WhileSymbolicState b = a;
    b.pc.push_back(lt(lv("#y"), num(5)));
    auto [rec, _] = b.allocRecord.alloc(0, Universe::LogicalVars);
    b.allocRecord = std::move(rec);

    WhileSymbolicState r = restrictState(a, b);
    CHECK(r.memory == a.memory);
    REQUIRE(r.pc.size() == 3);
    CHECK(r.pc[0] == a.pc[0]);
    CHECK(r.pc[2] == b.pc[1]);
    // future allocations replay b's decision
    auto [rec2, tok] = r.allocRecord.alloc(0, Universe::LogicalVars);
    (void)rec2;
    CHECK(tok.name == "#v_0_0");
}

TEST_CASE("restriction laws on states (randomized)") {
    Rng rng(40);
    for (int i = 0; i < 300; ++i) {
        WhileSymbolicState base;
        base.store["x"] = lv("#p0");
        WhileSymbolicState a = randomState(rng, base, static_cast<int>(randInt(rng, 0, 3)));
        WhileSymbolicState b = randomState(rng, a, static_cast<int>(randInt(rng, 0, 2)));
        WhileSymbolicState c2 = chance(rng, 0.5)
                                    ? randomState(rng, b, static_cast<int>(randInt(rng, 0, 2)))
                                    : b;

        // idempotence holds modulo duplicated conjuncts (canonical form)
        CHECK(canonicalSymbolicState(restrictState(a, a)) == canonicalSymbolicState(a));
        CHECK(restrictState(a, a).allocRecord == a.allocRecord);
        // right commutativity
        CHECK(stateKey(restrictState(restrictState(a, b), c2)) ==
              stateKey(restrictState(restrictState(a, c2), b)));
        // weakening
        WhileSymbolicState bc = restrictState(b, c2);
        if (stateKey(restrictState(a, bc)) == stateKey(a)) {
            CHECK(stateKey(restrictState(a, b)) == stateKey(a));
            CHECK(stateKey(restrictState(a, c2)) == stateKey(a));
        }
    }
}

TEST_CASE("modelsOf: direct evaluation example") {
    Solver s;
    WhileSymbolicState st;
    st.pc.push_back(eq(lv("#a"), num(1)));
    st.memory.add({lv("#l"), "p", lv("#a")});
    st.store["x"] = lv("#a");

    auto ws = modelsOf(st, 3, s);
    REQUIRE(!ws.empty());
    for (const ModelWitness& w : ws) {
        CHECK(pcHoldsUnder(st.pc, w.env));
        CHECK(w.concrete.store.at("x") == GilValue::num(1));
        REQUIRE(w.env.count("#l"));
        CHECK(w.env.at("#l").isSymb());
        CHECK(*w.concrete.memory.get(w.env.at("#l").symbolId(), "p") == GilValue::num(1));
    }
}

TEST_CASE("modelsOf discards environments that break disjointness") {
    Solver s;
    WhileSymbolicState st;
    st.memory.add({lv("#l1"), "p", num(1)});
    st.memory.add({lv("#l2"), "p", num(2)});
    auto ws = modelsOf(st, 4, s);
    for (const ModelWitness& w : ws) {
        CHECK(w.env.at("#l1") != w.env.at("#l2"));
        CHECK(w.concrete.memory.size() == 2);
    }
}

TEST_CASE("models of a restriction are models of the restricted state") {
    Solver s;
    Rng rng(77);
    for (int i = 0; i < 60; ++i) {
        WhileSymbolicState base;
        base.store["x"] = lv("#p0");
        WhileSymbolicState a = randomState(rng, base, 2);
        WhileSymbolicState b = randomState(rng, a, 2);
        WhileSymbolicState r = restrictState(a, b);
        for (const ModelWitness& w : modelsOf(r, 3, s)) {
            // same environment concretizes the weaker state to the same
            // memory and store
            CHECK(pcHoldsUnder(a.pc, w.env));
            auto mem = wl::interpretMemory(a.memory, w.env);
            REQUIRE(mem);
            CHECK(*mem == w.concrete.memory);
        }
    }
}

TEST_CASE("differential check: straight-line lookup program") {
    auto prog = compileSrc(R"(
proc main(x) {
  o := new { a: x + 1, b: 2 };
  y := o.a;
  z := o_b(o);
  return y + z;
}
proc o_b(p) { w := p.b; return w; }
)");
    auto report = differentialCheck(prog, "main", 5, {}, Solver{});
    CAPTURE(report.counterexamples.empty() ? "" : report.counterexamples[0]);
    CHECK(report.sound());
    CHECK(report.symbolicBranches == 1);
    CHECK(report.passes > 0);
}

TEST_CASE("differential check: branching program follows the witnessed branch") {
    auto prog = compileSrc(R"(
proc main(x) {
  if (x < 3) { r := 1; } else { r := 2; }
  assume (not (x = 3));
  return r;
}
)");
    auto report = differentialCheck(prog, "main", 5, {}, Solver{});
    CHECK(report.sound());
    CHECK(report.symbolicBranches == 2);
    CHECK(report.branchesChecked == 2);
}

TEST_CASE("differential check: failing branches concretize to failures") {
    auto prog = compileSrc(R"(
proc main(x) {
  assert (x < 10);
  return x;
}
)");
    auto report = differentialCheck(prog, "main", 5, {}, Solver{});
    CHECK(report.sound());
    CHECK(report.symbolicBranches == 2);  // return and fail
}

TEST_CASE("differential check: fuzzed programs, symbolic mode") {
    wl::FuzzOptions opts;
    opts.symbolicMode = true;
    size_t totalBranches = 0, totalWitnesses = 0;
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        wl::WhileCompiler c;
        AnnotatedProgram prog = c.compileProgram(wl::fuzzProgram(seed, opts));
        RunLimits lim;
        lim.stepBudget = 4000;
        auto report = differentialCheck(prog, "main", 5, lim, Solver{});
        if (!report.sound()) {
            CAPTURE(seed);
            CAPTURE(report.counterexamples[0]);
            CHECK(report.sound());
        }
        totalBranches += report.branchesChecked;
        totalWitnesses += report.witnessesChecked;
    }
    CHECK(totalBranches > 50);
    CHECK(totalWitnesses > 100);
}
