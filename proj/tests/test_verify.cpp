#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gilliant/verify.hpp"
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

}  // namespace

TEST_CASE("solver rewrites variables defined as list packs") {
    Solver s;
    PathCondition pc{eq(lv("#a"), listOf({lv("#x"), lv("#e")}))};
    CHECK(s.entails(pc, eq(hd(lv("#a")), lv("#x"))));
    CHECK(s.entails(pc, eq(Expr::binop(BinOpKind::Nth, lv("#a"), num(1)), lv("#e"))));
    auto ms = s.sampleModels(pc, {"#a", "#x", "#e"}, 2);
    CHECK(ms.size() == 2);
    for (const auto& env : ms) CHECK(pcHoldsUnder(pc, env));
}

TEST_CASE("verify: identity procedure against a pure spec") {
    auto prog = compileSrc(R"(
proc id(x) { return x; }
spec id(x) [[ emp ]] [[ emp ; x ]]
)");
    Verifier v(prog, Solver{});
    auto r = v.verifyProc("id", 0);
    CHECK(r.verified);
    CHECK(r.branchesDischarged == 1);
}

TEST_CASE("verify: lookup against a cell spec") {
    auto prog = compileSrc(R"(
proc get(x) { y := x.a; return y; }
spec get(x) [[ cell(#l, a, #v) ]] [[ cell(#l, a, #v) ; #v ]]
)");
    Verifier v(prog, Solver{});
    auto r = v.verifyProc("get", 0);
    for (const auto& i : r.issues) CAPTURE(i.message);
    CHECK(r.verified);
}

TEST_CASE("verify: wrong return expression fails with PostConsumeFailed") {
    auto prog = compileSrc(R"(
proc get(x) { y := x.a; return y; }
spec get(x) [[ (x = #l) * cell(#l, a, #v) ]] [[ cell(#l, a, #v) ; #v + 1 ]]
)");
    Verifier v(prog, Solver{});
    auto r = v.verifyProc("get", 0);
    CHECK(!r.verified);
    REQUIRE(!r.issues.empty());
    CHECK(r.issues[0].kind == VerifyIssue::Kind::PostConsumeFailed);
}

TEST_CASE("verify: leaked resource fails") {
    auto prog = compileSrc(R"(
proc leak(x) { o := new { a: 1 }; return 0; }
spec leak(x) [[ emp ]] [[ emp ; 0 ]]
)");
    Verifier v(prog, Solver{});
    auto r = v.verifyProc("leak", 0);
    CHECK(!r.verified);
    REQUIRE(!r.issues.empty());
    CHECK(r.issues[0].kind == VerifyIssue::Kind::PostConsumeFailed);
}

TEST_CASE("stepLogical: spec call against a pure spec") {
    auto prog = compileSrc(R"(
proc f(x) { return x + 1; }
spec f(x) [[ emp ]] [[ emp ; x + 1 ]]
proc g(a) { y := speccall f(4); return y; }
)");
    Verifier v(prog, Solver{});
    VerifyState init;
    init.inner.store.emplace("a", lv("#a"));
    auto cfg = initialConfig<VerifyModel>(prog.prog, "g", init);
    auto succ = v.stepLogical(cfg);
    REQUIRE(succ.size() == 1);
    CHECK(*v.model().ee(succ[0].state, pv("y")) == num(5));
}

TEST_CASE("stepLogical: fold errors") {
    auto prog = compileSrc(R"(
pred p(z) { cell(z, a, 7) }
proc h(x) { fold q(x); return 0; }
proc h2(x) { fold p(x) def 3; return 0; }
)");
    Verifier v(prog, Solver{});
    VerifyState init;
    init.inner.store.emplace("x", lv("#x"));
    auto cfg = initialConfig<VerifyModel>(prog.prog, "h", init);
    CHECK_THROWS_AS(v.stepLogical(cfg), EngineError);
    auto cfg2 = initialConfig<VerifyModel>(prog.prog, "h2", init);
    CHECK_THROWS_AS(v.stepLogical(cfg2), EngineError);
}

TEST_CASE("fold then unfold restores the pre-fold state exactly (no existentials)") {
    auto prog = compileSrc(R"(
pred p(z) { cell(z, a, 7) }
proc h(x) { fold p(x); unfold p(x); return 0; }
)");
    Verifier v(prog, Solver{});
    VerifyState init;
    init.inner.store.emplace("x", lv("#x"));
    init.inner.memory.add({lv("#x"), "a", num(7)});
    auto cfg = initialConfig<VerifyModel>(prog.prog, "h", init);

    auto folded = v.stepLogical(cfg);
    REQUIRE(folded.size() == 1);
    CHECK(folded[0].state.inner.memory.size() == 0);
    REQUIRE(folded[0].state.preds.size() == 1);
    CHECK(folded[0].state.preds[0].first == "p");

    auto unfolded = v.stepLogical(folded[0]);
    REQUIRE(unfolded.size() == 1);
    CHECK(unfolded[0].state.preds.empty());
    CHECK(canonicalSymbolicState(unfolded[0].state.inner) ==
          canonicalSymbolicState(init.inner));
}

TEST_CASE("fold/unfold round-trip with existentials restores modulo renaming") {
    auto prog = compileSrc(R"(
pred p(z) { cell(z, a, #w) }
proc h(x) { fold p(x) with #w: #v0; unfold p(x); return 0; }
)");
    Verifier v(prog, Solver{});
    VerifyState init;
    init.inner.store.emplace("x", lv("#x"));
    init.inner.memory.add({lv("#x"), "a", lv("#v0")});
    auto cfg = initialConfig<VerifyModel>(prog.prog, "h", init);

    auto folded = v.stepLogical(cfg);
    REQUIRE(folded.size() == 1);
    auto unfolded = v.stepLogical(folded[0]);
    REQUIRE(unfolded.size() == 1);
    const auto& mem = unfolded[0].state.inner.memory;
    REQUIRE(mem.size() == 1);
    CHECK(mem.cells()[0].loc == lv("#x"));
    CHECK(mem.cells()[0].prop == "a");
    CHECK(mem.cells()[0].val.isLVar());  // fresh instance of the existential
}

TEST_CASE("fold/unfold round-trip over random cell contents") {
    Rng rng(5150);
    for (int iter = 0; iter < 60; ++iter) {
        auto prog = compileSrc(R"(
pred p(z) { cell(z, a, 7) * cell(z, b, #w) }
proc h(x) { fold p(x) with #w: #v0; unfold p(x); return 0; }
)");
        Verifier v(prog, Solver{});
        VerifyState init;
        init.inner.store.emplace("x", lv("#x"));
        init.inner.memory.add({lv("#x"), "a", num(7)});
        init.inner.memory.add({lv("#x"), "b", lv("#v0")});
        long extra = randInt(rng, 0, 2);
        for (long i = 0; i < extra; ++i)
            init.inner.memory.add({sym("$o" + std::to_string(i)), "c", num(randInt(rng, 0, 9))});
        auto cfg = initialConfig<VerifyModel>(prog.prog, "h", init);
        auto folded = v.stepLogical(cfg);
        REQUIRE(folded.size() == 1);
        CHECK(folded[0].state.inner.memory.size() == static_cast<size_t>(extra));
        auto unfolded = v.stepLogical(folded[0]);
        REQUIRE(unfolded.size() == 1);
        CHECK(unfolded[0].state.inner.memory.size() == static_cast<size_t>(extra) + 2);
        CHECK(unfolded[0].state.preds.empty());
    }
}

TEST_CASE("stepLogical delegates plain commands bit-identically to step") {
    auto prog = compileSrc(R"(
proc f(x) { y := x + 1; o := new { a: y }; z := o.a; assert (z = x + 1); return z; }
)");
    Verifier v(prog, Solver{});
    VerifyState init;
    init.inner.store.emplace("x", lv("#x"));
    auto cfg = initialConfig<VerifyModel>(prog.prog, "f", init);

    std::vector<Config<VerifyModel>> frontier{cfg};
    int steps = 0;
    while (!frontier.empty() && steps < 200) {
        auto cur = frontier.back();
        frontier.pop_back();
        if (cur.outcome.terminal()) continue;
        ++steps;
        auto a = v.stepLogical(cur);
        auto b = step(v.model(), cur);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(canonicalSymbolicState(a[i].state.inner) ==
                  canonicalSymbolicState(b[i].state.inner));
            CHECK(a[i].idx == b[i].idx);
        }
        for (auto& s : a) frontier.push_back(std::move(s));
    }
    CHECK(steps > 0);
}

TEST_CASE("verify: list push with fold and packed arguments") {
    auto prog = compileSrc(R"(
pred list(p) {
  (p = 0)
  | cell(p, v, #v) * cell(p, n, #n) * list(#n)
}
proc push(a) {
  x := hd a;
  w := nth(a, 1);
  node := new { v: w, n: x };
  fold list(node) def 1 with #v: w, #n: x;
  return node;
}
spec push(a) [[ (a = [#x, #e]) * list(#x) ]] [[ list(#r) ; #r ]]
)");
    Verifier v(prog, Solver{});
    auto r = v.verifyProc("push", 0);
    for (const auto& i : r.issues) {
        CAPTURE(i.message);
        for (const auto& t : i.trace) CAPTURE(t);
    }
    CHECK(r.verified);
    CHECK(r.branchesDischarged == 1);
}

TEST_CASE("verify: list length with explicit bindings") {
    // the first unfold instantiates its definition's existentials as
    // #u_0_v and #u_0_n; the fold below references them explicitly
    auto prog = compileSrc(R"(
pred list(p) {
  (p = 0)
  | cell(p, v, #v) * cell(p, n, #n) * list(#n)
}
proc llen(x) {
  r := 0;
  if (x = 0) {
    skip;
  } else {
    unfold list(x);
    t := x.n;
    r := speccall llen(t) spec 0;
    r := r + 1;
    fold list(x) def 1 with #v: #u_0_v, #n: t;
  }
  return r;
}
spec llen(x) [[ list(x) ]] [[ list(x) ; #r ]]
)");
    Verifier v(prog, Solver{});
    auto r = v.verifyProc("llen", 0);
    for (const auto& i : r.issues) {
        CAPTURE(i.message);
        for (const auto& t : i.trace) CAPTURE(t);
    }
    CHECK(r.verified);
    CHECK(r.branchesDischarged == 2);
}
