#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gilliant/fuzz.hpp"
#include "gilliant/state_ctor.hpp"
#include "gilliant/while_compile.hpp"
#include "gilliant/while_memory.hpp"
#include "gilliant/while_parse.hpp"
#include "helpers.hpp"
#include "oracle_while.hpp"

using namespace gilliant;
using namespace gilliant::wl;
using namespace gilliant::testing;

namespace {

std::vector<GilCommand> compileOne(const StmtPtr& s, int pc0, int* next = nullptr) {
    WhileCompiler c;
    auto r = c.compileStmt(*s, pc0);
    if (next) *next = r.next;
    return r.cmds;
}

Expr pairArg(Expr loc, const std::string& prop) { return listOf({std::move(loc), str(prop)}); }
Expr tripleArg(Expr loc, const std::string& prop, Expr val) {
    return listOf({std::move(loc), str(prop), std::move(val)});
}

}  // namespace

// golden pairs, one per compiler rule

TEST_CASE("golden: assignment") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::assign("x", add(pv("y"), num(1))), 4, &next);
    CHECK(cmds == std::vector<GilCommand>{GilCommand::assign("x", add(pv("y"), num(1)))});
    CHECK(next == 5);
}

TEST_CASE("golden: skip") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::skip(), 9, &next);
    CHECK(cmds == std::vector<GilCommand>{GilCommand::ifgoto(boolean(true), 10)});
    CHECK(next == 10);
}

TEST_CASE("golden: sequence concatenates") {
    int next = 0;
    auto cmds = compileOne(
        WhileStmt::seq(WhileStmt::assign("x", num(1)), WhileStmt::assign("y", num(2))), 3, &next);
    CHECK(cmds == std::vector<GilCommand>{GilCommand::assign("x", num(1)),
                                          GilCommand::assign("y", num(2))});
    CHECK(next == 5);
}

TEST_CASE("golden: if") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::ifElse(pv("b"), WhileStmt::assign("x", num(1)),
                                             WhileStmt::assign("x", num(2))),
                           0, &next);
    // 0: ifgoto (not b) 3 ; 1: x := 1 ; 2: ifgoto true 4 ; 3: x := 2 ; next 4
    CHECK(cmds == std::vector<GilCommand>{GilCommand::ifgoto(bnot(pv("b")), 3),
                                          GilCommand::assign("x", num(1)),
                                          GilCommand::ifgoto(boolean(true), 4),
                                          GilCommand::assign("x", num(2))});
    CHECK(next == 4);
}

TEST_CASE("golden: while") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::whileLoop(lt(pv("i"), num(3)),
                                                WhileStmt::assign("i", add(pv("i"), num(1)))),
                           5, &next);
    // 5: ifgoto (not (i<3)) 8 ; 6: i := i+1 ; 7: ifgoto true 5 ; next 8
    CHECK(cmds == std::vector<GilCommand>{GilCommand::ifgoto(bnot(lt(pv("i"), num(3))), 8),
                                          GilCommand::assign("i", add(pv("i"), num(1))),
                                          GilCommand::ifgoto(boolean(true), 5)});
    CHECK(next == 8);
}

TEST_CASE("golden: call") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::call("y", "f", pv("x")), 2, &next);
    CHECK(cmds == std::vector<GilCommand>{
                      GilCommand::call("y", Expr::lit(GilValue::proc("f")), pv("x"))});
    CHECK(next == 3);
}

TEST_CASE("golden: return") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::ret(pv("x")), 7, &next);
    CHECK(cmds == std::vector<GilCommand>{GilCommand::ret(pv("x"))});
    CHECK(next == 8);
}

TEST_CASE("golden: assume") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::assume(pv("b")), 0, &next);
    CHECK(cmds == std::vector<GilCommand>{GilCommand::ifgoto(pv("b"), 2), GilCommand::vanish()});
    CHECK(next == 2);
}

TEST_CASE("golden: assert") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::assertStmt(pv("b")), 4, &next);
    CHECK(cmds ==
          std::vector<GilCommand>{GilCommand::ifgoto(pv("b"), 6), GilCommand::fail(pv("b"))});
    CHECK(next == 6);
}

TEST_CASE("golden: new compiles to symb plus one mutate per field") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::newObj("o", {{"a", num(1)}, {"b", num(2)}}), 3, &next);
    CHECK(cmds == std::vector<GilCommand>{
                      GilCommand::symb("o", 0),
                      GilCommand::actionCmd("_", kMutate, tripleArg(pv("o"), "a", num(1))),
                      GilCommand::actionCmd("_", kMutate, tripleArg(pv("o"), "b", num(2)))});
    CHECK(next == 6);
}

TEST_CASE("golden: lookup") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::lookup("x", pv("o"), "a"), 1, &next);
    CHECK(cmds == std::vector<GilCommand>{
                      GilCommand::actionCmd("x", kLookup, pairArg(pv("o"), "a"))});
    CHECK(next == 2);
}

TEST_CASE("golden: mutate") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::mutate(pv("o"), "b", num(5)), 0, &next);
    CHECK(cmds == std::vector<GilCommand>{
                      GilCommand::actionCmd("_", kMutate, tripleArg(pv("o"), "b", num(5)))});
    CHECK(next == 1);
}

TEST_CASE("golden: dispose") {
    int next = 0;
    auto cmds = compileOne(WhileStmt::dispose(pv("o")), 0, &next);
    CHECK(cmds == std::vector<GilCommand>{GilCommand::actionCmd("_", kDispose, pv("o"))});
    CHECK(next == 1);
}

TEST_CASE("golden: logical statements") {
    int next = 0;
    auto f = compileOne(WhileStmt::fold("list", pv("x"), 1, {{"#v", num(3)}}), 0, &next);
    CHECK(f == std::vector<GilCommand>{GilCommand::fold("list", pv("x"), 1, {{"#v", num(3)}})});
    auto u = compileOne(WhileStmt::unfold("list", pv("x")), 0, &next);
    CHECK(u == std::vector<GilCommand>{GilCommand::unfold("list", pv("x"))});
    auto sc = compileOne(WhileStmt::specCall("y", "f", pv("x"), 0, {}), 0, &next);
    CHECK(sc == std::vector<GilCommand>{
                    GilCommand::specCall("y", Expr::lit(GilValue::proc("f")), pv("x"), 0, {})});
}

namespace {

// label contiguity: commands occupy pc0..next-1; goto targets within [pc0, next]
void checkContiguity(const StmtPtr& s, int pc0) {
    WhileCompiler c;
    auto r = c.compileStmt(*s, pc0);
    CHECK(r.next == pc0 + static_cast<int>(r.cmds.size()));
    for (const GilCommand& cmd : r.cmds) {
        if (cmd.kind == GilCommand::Kind::IfGoto) {
            CHECK(cmd.target >= pc0);
            CHECK(cmd.target <= r.next);
        }
    }
}

}  // namespace

TEST_CASE("label contiguity over fuzzed statements") {
    Rng rng(321);
    for (int i = 0; i < 1000; ++i) {
        StmtPtr s = fuzzStmt(static_cast<uint64_t>(i) * 2654435761u + 17, 3);
        checkContiguity(s, static_cast<int>(randInt(rng, 0, 50)));
    }
}

TEST_CASE("allocation sites are jointly unique across a program") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        WhileProgram wp = fuzzProgram(seed);
        WhileCompiler c;
        AnnotatedProgram prog = c.compileProgram(wp);
        CHECK(validateProgram(prog.prog).empty());
    }
}

TEST_CASE("parser round-trips a representative program") {
    const char* src = R"(
// sample with every construct
proc main(x) {
  o := new { a: 1, b: x + 2 };
  y := o.a;
  o.b := y * 3;
  if (y < 2) { z := [1, 2, x]; } else { skip; }
  i := 0;
  while (i < 3) { i := i + 1; }
  assume (not (x = 0));
  assert (y <= 10);
  r := main2(y);
  dispose(o);
  return r;
}
proc main2(n) { return n + 1; }
)";
    WhileProgram wp = parseWhile(src);
    CHECK(wp.procs.size() == 2);
    WhileCompiler c;
    AnnotatedProgram prog = c.compileProgram(wp);
    CHECK(validateProgram(prog.prog).empty());

    // concrete execution agrees with the oracle
    WhileConcreteModel m;
    auto r = run(m, prog.prog, "main", {}, GilValue::num(1), {});
    auto o = oracleRun(wp, "main", GilValue::num(1));
    REQUIRE(o.kind == OracleOutcome::Kind::Return);
    REQUIRE(r.finals.size() == 1);
    CHECK(r.finals[0].outcome.value == o.value);
}

TEST_CASE("parser rejects malformed input with positions") {
    CHECK_THROWS_AS(parseWhile("proc main(x) { y := ; }"), ParseError);
    CHECK_THROWS_AS(parseWhile("proc main(x { return 0; }"), ParseError);
    CHECK_THROWS_AS(parseWhile("pred p(x) { }"), ParseError);
}

namespace {

bool outcomesAgree(const OracleOutcome& o, const RunResult<WhileConcreteModel>& r) {
    using OK = OracleOutcome::Kind;
    switch (o.kind) {
        case OK::Return:
            return r.finals.size() == 1 && r.issues.empty() &&
                   r.finals[0].outcome.kind == Outcome<GilValue>::Kind::Return &&
                   r.finals[0].outcome.value == o.value;
        case OK::Fail:
            return r.finals.size() == 1 && r.issues.empty() &&
                   r.finals[0].outcome.kind == Outcome<GilValue>::Kind::Fail &&
                   r.finals[0].outcome.value == o.value;
        case OK::NoResult: return r.finals.empty() && r.issues.empty();
        case OK::Missing:
        case OK::Error:
            return r.finals.empty() && r.issues.size() == 1 &&
                   r.issues[0].kind == BranchIssue<WhileConcreteModel>::Kind::Error;
        case OK::Budget: return true;  // not comparable
    }
    return false;
}

}  // namespace

TEST_CASE("compile+exec matches the big-step oracle on fuzzed programs") {
    int mismatches = 0;
    for (uint64_t seed = 1; seed <= 200; ++seed) {
        WhileProgram wp = fuzzProgram(seed);
        WhileCompiler c;
        AnnotatedProgram prog = c.compileProgram(wp);
        for (long argv = 0; argv <= 2; ++argv) {
            GilValue arg = GilValue::num(argv);
            OracleOutcome o = oracleRun(wp, "main", arg);
            if (o.kind == OracleOutcome::Kind::Budget) continue;
            WhileConcreteModel m;
            RunLimits lim;
            lim.stepBudget = 200000;
            auto r = run(m, prog.prog, "main", {}, arg, lim);
            if (!outcomesAgree(o, r)) {
                ++mismatches;
                CAPTURE(seed);
                CAPTURE(argv);
                CAPTURE(wp.show());
                CHECK(outcomesAgree(o, r));
            }
        }
    }
    CHECK(mismatches == 0);
}
