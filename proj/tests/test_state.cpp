#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gilliant/pred_state.hpp"
#include "helpers.hpp"

using namespace gilliant;
using namespace gilliant::testing;

TEST_CASE("concrete state constructor clauses") {
    WhileConcreteModel m;
    WhileConcreteState st;

    SUBCASE("assume keeps only true") {
        CHECK(m.assume(st, GilValue::boolean(true)).size() == 1);
        CHECK(m.assume(st, GilValue::boolean(false)).empty());
        CHECK(m.assume(st, GilValue::num(1)).empty());
    }
    SUBCASE("symb allocates an uninterpreted symbol") {
        auto r = m.symbAlloc(st, 4);
        REQUIRE(r.size() == 1);
        CHECK(r[0].second == GilValue::symbol("$l_4_0"));
    }
    SUBCASE("fresh allocates a concrete value") {
        auto r = m.freshAlloc(st, 2);
        REQUIRE(r.size() == 1);
        CHECK(r[0].second == GilValue::num(0));
    }
    SUBCASE("ee evaluates through the store") {
        st.store["x"] = GilValue::num(2);
        CHECK(*m.ee(st, add(pv("x"), num(1))) == GilValue::num(3));
        CHECK(!m.ee(st, pv("nope")));
    }
    SUBCASE("store round-trip") {
        std::map<std::string, GilValue> sto{{"a", GilValue::num(1)}};
        CHECK(m.getStore(m.setStore(st, sto)) == sto);
    }
    SUBCASE("setVar does not touch memory or the allocation record") {
        st.memory.set("$l", "p", GilValue::num(9));
        auto st2 = m.setVar(st, "x", GilValue::num(1));
        CHECK(st2.memory == st.memory);
        CHECK(st2.allocRecord == st.allocRecord);
    }
}

TEST_CASE("symbolic state constructor clauses") {
    WhileSymbolicModel m{Solver{}};
    WhileSymbolicState st;

    SUBCASE("assume prunes contradictions") {
        st.pc.push_back(eq(lv("#a"), num(1)));
        CHECK(m.assume(st, eq(lv("#a"), num(2))).empty());
        auto kept = m.assume(st, eq(lv("#a"), num(1)));
        REQUIRE(kept.size() == 1);
        CHECK(kept[0].first.pc.size() == 2);
    }
    SUBCASE("fresh binds a new logical variable, pc unchanged") {
        st.pc.push_back(eq(lv("#a"), num(1)));
        auto r = m.freshAlloc(st, 7);
        REQUIRE(r.size() == 1);
        CHECK(r[0].second == lv("#v_7_0"));
        CHECK(r[0].first.pc == st.pc);
    }
    SUBCASE("symb yields symbol literals") {
        auto r = m.symbAlloc(st, 3);
        REQUIRE(r.size() == 1);
        CHECK(r[0].second == sym("$l_3_0"));
    }
    SUBCASE("ee substitutes the store and simplifies") {
        st.store["x"] = lv("#a");
        CHECK(*m.ee(st, add(pv("x"), num(0))) == add(lv("#a"), num(0)));
        CHECK(*m.ee(st, mul(num(2), num(3))) == num(6));
    }
    SUBCASE("ea extends the pc with the action's branch condition") {
        st.memory.add({lv("#l1"), "a", num(1)});
        st.memory.add({lv("#l2"), "a", num(2)});
        auto res = m.ea(wl::kLookup, st, listOf({lv("#l"), str("a")}));
        REQUIRE(res.branches.size() == 2);
        for (const auto& [next, _] : res.branches) {
            REQUIRE(next.pc.size() == 1);  // pc grew by the equality
            CHECK(next.pc[0].isBinOp());
        }
    }
    SUBCASE("pc monotonicity: every ea successor extends the old pc conjunct-wise") {
        st.pc.push_back(bnot(eq(lv("#l"), sym("$q"))));
        st.memory.add({lv("#l"), "a", num(1)});
        auto res = m.ea(wl::kMutate, st, listOf({lv("#l"), str("a"), num(5)}));
        for (const auto& [next, _] : res.branches) {
            REQUIRE(next.pc.size() >= st.pc.size());
            for (size_t i = 0; i < st.pc.size(); ++i) CHECK(next.pc[i] == st.pc[i]);
        }
    }
}

using CPredModel = PredModel<WhileConcreteModel>;
using SPredModel = PredModel<WhileSymbolicModel>;

TEST_CASE("predicate state: setP and getP") {
    SPredModel m{WhileSymbolicModel{Solver{}}, CorePredInterp::forWhile()};
    SPredModel::State st;

    SUBCASE("setP then getP with the same pair restores the state") {
        auto set = m.ea("setP", st, m.packPredArg("list", lv("#x")));
        REQUIRE(set.branches.size() == 1);
        auto got = m.ea("getP", set.branches[0].first, m.packPredArg("list", lv("#x")));
        REQUIRE(got.branches.size() == 1);
        CHECK(got.branches[0].first.preds.empty());
    }
    SUBCASE("getP on empty preds is missing resource") {
        auto got = m.ea("getP", st, m.packPredArg("list", lv("#x")));
        CHECK(got.branches.empty());
        REQUIRE(got.error);
        CHECK(got.error->kind == EngineError::Kind::MissingResource);
    }
    SUBCASE("setP prepends") {
        auto s1 = m.ea("setP", st, m.packPredArg("q", lv("#w"))).branches[0].first;
        auto s2 = m.ea("setP", s1, m.packPredArg("pn", lv("#v"))).branches[0].first;
        REQUIRE(s2.preds.size() == 2);
        CHECK(s2.preds[0].first == "pn");
        CHECK(s2.preds[1].first == "q");
    }
    SUBCASE("getP matches arguments up to pc entailment") {
        st.inner.pc.push_back(eq(lv("#x"), lv("#y")));
        auto s1 = m.ea("setP", st, m.packPredArg("list", lv("#x"))).branches[0].first;
        auto got = m.ea("getP", s1, m.packPredArg("list", lv("#y")));
        REQUIRE(got.branches.size() == 1);
        CHECK(got.branches[0].first.preds.empty());
    }
}

TEST_CASE("produce and consume over symbolic states") {
    SPredModel m{WhileSymbolicModel{Solver{}}, CorePredInterp::forWhile()};
    SPredModel::State st;

    SUBCASE("emp is identity") {
        auto out = produce(m, st, Assertion::emp(), {});
        REQUIRE(out.size() == 1);
        CHECK(out[0].inner.pc.empty());
    }
    SUBCASE("pure produce assumes") {
        auto out = produce(m, st, Assertion::pure(eq(lv("#a"), num(1))), {});
        REQUIRE(out.size() == 1);
        REQUIRE(out[0].inner.pc.size() == 1);
        CHECK(out[0].inner.pc[0] == eq(lv("#a"), num(1)));
    }
    SUBCASE("core predicate produce adds a heap cell") {
        Assertion cell = Assertion::core(wl::kCellPred, listOf({sym("$l"), str("p"), num(3)}));
        auto out = produce(m, st, Assertion::star(cell, Assertion::emp()), {});
        REQUIRE(out.size() == 1);
        REQUIRE(out[0].inner.memory.size() == 1);
        CHECK(out[0].inner.memory.cells()[0].prop == "p");
    }
    SUBCASE("consume after produce contains the original state") {
        Assertion P = Assertion::star(
            Assertion::core(wl::kCellPred, listOf({lv("#l"), str("p"), lv("#v")})),
            Assertion::pure(eq(lv("#v"), num(3))));
        std::map<std::string, Expr> theta{{"#l", lv("#l")}, {"#v", lv("#v")}};
        auto produced = produce(m, st, P, theta);
        REQUIRE(produced.size() == 1);
        auto back = consume(m, produced[0], P, theta);
        REQUIRE(!back.error);
        bool foundOriginal = false;
        for (const auto& s : back.states)
            if (s.inner.memory.size() == 0 && s.preds.empty()) foundOriginal = true;
        CHECK(foundOriginal);
    }
    SUBCASE("entailed pure consumes; non-entailed fails") {
        st.inner.pc.push_back(eq(lv("#a"), num(1)));
        auto ok = consume(m, st, Assertion::pure(eq(lv("#a"), num(1))), {});
        REQUIRE(!ok.error);
        CHECK(ok.states.size() == 1);

        SPredModel::State empty;
        auto bad = consume(m, empty, Assertion::pure(eq(lv("#a"), num(1))), {});
        REQUIRE(bad.error);
        CHECK(bad.error->kind == ConsumeError::Kind::EntailmentFailure);
    }
    SUBCASE("star order insensitivity modulo canonical form") {
        Assertion A = Assertion::core(wl::kCellPred, listOf({sym("$a"), str("p"), num(1)}));
        Assertion B = Assertion::core(wl::kCellPred, listOf({sym("$b"), str("q"), num(2)}));
        auto ab = produce(m, st, Assertion::star(A, B), {});
        auto ba = produce(m, st, Assertion::star(B, A), {});
        REQUIRE(ab.size() == 1);
        REQUIRE(ba.size() == 1);
        CHECK(canonicalSymbolicState(ab[0].inner) == canonicalSymbolicState(ba[0].inner));
    }
}

TEST_CASE("produce and consume over concrete states") {
    CPredModel m{WhileConcreteModel{}, CorePredInterp::forWhile()};
    CPredModel::State st;
    std::map<std::string, GilValue> theta{{"#l", GilValue::symbol("$l")},
                                          {"#v", GilValue::num(5)}};
    Assertion P = Assertion::core(wl::kCellPred, listOf({lv("#l"), str("p"), lv("#v")}));
    auto produced = produce(m, st, P, theta);
    REQUIRE(produced.size() == 1);
    CHECK(*produced[0].inner.memory.get("$l", "p") == GilValue::num(5));
    auto back = consume(m, produced[0], P, theta);
    REQUIRE(!back.error);
    REQUIRE(back.states.size() == 1);
    CHECK(back.states[0].inner.memory.size() == 0);
}

TEST_CASE("Eq. 3 well-formedness through produce/consume, randomized") {
    SPredModel m{WhileSymbolicModel{Solver{}}, CorePredInterp::forWhile()};
    Rng rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        // decided memory: distinct symbols
        SPredModel::State st;
        int n = static_cast<int>(randInt(rng, 0, 3));
        for (int i = 0; i < n; ++i)
            st.inner.memory.add({sym("$c" + std::to_string(i)),
                                 std::string(1, static_cast<char>('a' + randInt(rng, 0, 2))),
                                 num(randInt(rng, 0, 9))});
        Expr loc = sym("$c" + std::to_string(randInt(rng, 0, 3)));
        std::string prop(1, static_cast<char>('a' + randInt(rng, 0, 2)));
        Expr val = num(randInt(rng, 0, 9));
        Assertion cell = Assertion::core(wl::kCellPred, listOf({loc, str(prop), val}));

        auto got = consume(m, st, cell, {});
        if (!got.error) {
            // getter succeeded: setter on the result restores the state
            for (const auto& s : got.states) {
                auto back = produce(m, s, cell, {});
                REQUIRE(back.size() == 1);
                CHECK(canonicalSymbolicState(back[0].inner) == canonicalSymbolicState(st.inner));
            }
        } else {
            // getter failed: either the cell is absent (setter succeeds and
            // its getter then recovers it) or present with a different value
            bool present = false;
            for (const auto& c : st.inner.memory.cells())
                if (c.prop == prop && c.loc == loc) present = true;
            if (!present) {
                auto set = produce(m, st, cell, {});
                REQUIRE(set.size() == 1);
                auto back = consume(m, set[0], cell, {});
                REQUIRE(!back.error);
                bool restores = false;
                for (const auto& s : back.states)
                    if (canonicalSymbolicState(s.inner) == canonicalSymbolicState(st.inner))
                        restores = true;
                CHECK(restores);
            }
        }
    }
}
