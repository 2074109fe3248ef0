#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gilliant/alloc.hpp"
#include "helpers.hpp"

using namespace gilliant;
using namespace gilliant::testing;

TEST_CASE("alloc naming scheme") {
    AllocRecord empty;
    auto [r1, t1] = empty.alloc(3, Universe::UninterpretedSymbols);
    CHECK(t1.name == "$l_3_0");
    auto [r2, t2] = r1.alloc(3, Universe::UninterpretedSymbols);
    CHECK(t2.name == "$l_3_1");
    CHECK(t1.key() != t2.key());

    auto [r3, t3] = empty.alloc(1, Universe::LogicalVars);
    CHECK(t3.name == "#v_1_0");

    auto [r4, t4] = empty.alloc(0, Universe::ConcreteValues);
    CHECK(t4.value == GilValue::num(0));
    auto [r5, t5] = r4.alloc(0, Universe::ConcreteValues);
    CHECK(t5.value == GilValue::num(1));
}

TEST_CASE("alloc determinism") {
    AllocRecord a, b;
    for (int i = 0; i < 5; ++i) {
        auto [ra, ta] = a.alloc(i % 2, Universe::UninterpretedSymbols);
        auto [rb, tb] = b.alloc(i % 2, Universe::UninterpretedSymbols);
        CHECK(ta == tb);
        a = ra;
        b = rb;
    }
    CHECK(a == b);
}

namespace {

AllocRecord randomRecord(Rng& rng, const AllocRecord& base, int extra) {
    AllocRecord r = base;
    for (int i = 0; i < extra; ++i) {
        int site = static_cast<int>(randInt(rng, 0, 3));
        Universe u = chance(rng, 0.5) ? Universe::UninterpretedSymbols
                                      : (chance(rng, 0.5) ? Universe::LogicalVars
                                                          : Universe::ConcreteValues);
        r = r.alloc(site, u).first;
    }
    return r;
}

}  // namespace

TEST_CASE("restrictRecord: scripted replay") {
    Rng rng(101);
    AllocRecord r1 = randomRecord(rng, {}, 3);
    AllocRecord r2 = randomRecord(rng, r1, 4);

    AllocRecord restricted = restrictRecord(r1, r2);
    // replaying every site of the restricted record reproduces r2's choices
    AllocRecord cur = restricted;
    for (const auto& [site, toks] : r2.sites()) {
        size_t have = r1.siteCount(site);
        for (size_t k = have; k < toks.size(); ++k) {
            Universe u = toks[k].kind == AllocToken::Kind::Symb ? Universe::UninterpretedSymbols
                         : toks[k].kind == AllocToken::Kind::LVar ? Universe::LogicalVars
                                                                  : Universe::ConcreteValues;
            auto [next, tok] = cur.alloc(site, u);
            CHECK(tok == toks[k]);
            cur = next;
        }
    }
    for (const auto& key : r2.globalKeys()) CHECK(cur.globalKeys().count(key));
}

TEST_CASE("restrictRecord: FutureToPastAlloc") {
    AllocRecord r;
    auto [r1, t1] = r.alloc(5, Universe::UninterpretedSymbols);
    AllocRecord back = restrictRecord(r, r1);
    auto [_, t] = back.alloc(5, Universe::UninterpretedSymbols);
    CHECK(t == t1);
}

TEST_CASE("restrictRecord: incompatible records") {
    AllocRecord a = AllocRecord().alloc(0, Universe::UninterpretedSymbols).first;
    AllocRecord b = AllocRecord().alloc(0, Universe::LogicalVars).first;
    CHECK_THROWS_AS(restrictRecord(a, b), IncompatibleRecords);
}

TEST_CASE("restriction laws on records (randomized)") {
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        AllocRecord a = randomRecord(rng, {}, static_cast<int>(randInt(rng, 0, 4)));
        AllocRecord b = randomRecord(rng, a, static_cast<int>(randInt(rng, 0, 3)));
        AllocRecord c = chance(rng, 0.5) ? randomRecord(rng, b, static_cast<int>(randInt(rng, 0, 2)))
                                         : b;

        // idempotence
        CHECK(restrictRecord(a, a) == a);
        // right commutativity (b and c are prefix-compatible by construction)
        CHECK(restrictRecord(restrictRecord(a, b), c) == restrictRecord(restrictRecord(a, c), b));
        // weakening
        AllocRecord bc = restrictRecord(b, c);
        if (restrictRecord(a, bc) == a) {
            CHECK(restrictRecord(a, b) == a);
            CHECK(restrictRecord(a, c) == a);
        }
        // RMono-Alloc: allocation only adds information
        auto [a2, _] = a.alloc(static_cast<int>(randInt(rng, 0, 3)),
                               Universe::UninterpretedSymbols);
        CHECK(restrictRecord(a2, a) == a2);
    }
}
