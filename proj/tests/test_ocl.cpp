#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bauml/diag.hpp"
#include "bauml/ocl.hpp"

using namespace bauml;

static OclPtr rt(const std::string& text) {
    OclPtr e = ocl::parse(text);
    OclPtr again = ocl::parse(ocl::to_string(e));
    REQUIRE(ocl::equal(e, again));
    return e;
}

TEST_CASE("literals and variables") {
    CHECK(rt("true")->kind == OclExpr::ConstBool);
    CHECK(rt("false")->bval == false);
    CHECK(rt("\"hello\"")->sval == "hello");
    CHECK(rt("x")->kind == OclExpr::Var);
}

TEST_CASE("navigation chains") {
    OclPtr e = rt("m.c1.items");
    REQUIRE(e->kind == OclExpr::Nav);
    CHECK(e->name == "items");
    CHECK(e->kids[0]->name == "c1");
    CHECK(e->kids[0]->kids[0]->kind == OclExpr::Var);

    OclPtr p = rt("m.zero.r@pre");
    CHECK(p->at_pre);
    CHECK_FALSE(p->kids[0]->at_pre);
}

TEST_CASE("allInstances and collection operations") {
    OclPtr e = rt("Item1.allInstances()->exists(i | i.oclIsNew() and i.id = id)");
    REQUIRE(e->kind == OclExpr::Exists);
    CHECK(e->var == "i");
    CHECK(e->kids[0]->kind == OclExpr::AllInstances);
    CHECK(e->kids[0]->name == "Item1");
    REQUIRE(e->kids[1]->kind == OclExpr::And);

    CHECK(rt("Flag.allInstances()->isEmpty()")->kind == OclExpr::IsEmpty);
    CHECK(rt("ro.itemType.id->includes(idItemType)")->kind == OclExpr::Includes);
    CHECK(rt("o.itemType->forAll(it | it.item->exists(i | i.sentOrder->isEmpty()))")->kind ==
          OclExpr::ForAll);
    CHECK(rt("Item.allInstances()->select(i | i.lastR)")->kind == OclExpr::Select);
    CHECK(rt("it.item->select(i | i.sentOrder->isEmpty())->asOrderedSet()->first()")->kind ==
          OclExpr::First);
}

TEST_CASE("operator precedence") {
    // not binds tighter than and, which binds tighter than or.
    OclPtr e = ocl::parse("not a and b or c");
    REQUIRE(e->kind == OclExpr::Or);
    REQUIRE(e->kids[0]->kind == OclExpr::And);
    CHECK(e->kids[0]->kids[0]->kind == OclExpr::Not);
    CHECK(ocl::equal(ocl::parse("not (a and b) or c")->kids[0]->kids[0], ocl::parse("a and b")));

    // comparison binds tighter than and.
    OclPtr c = ocl::parse("x.id = id and x.done = true");
    REQUIRE(c->kind == OclExpr::And);
    CHECK(c->kids[0]->kind == OclExpr::Eq);
    CHECK(c->kids[1]->kind == OclExpr::Eq);

    CHECK(ocl::parse("a <> b")->kind == OclExpr::Neq);
}

TEST_CASE("type operations") {
    OclPtr e = rt("not m.oclIsTypeOf(Ready2CM) and m.oclIsTypeOf(Halted2CM)");
    REQUIRE(e->kind == OclExpr::And);
    CHECK(e->kids[0]->kids[0]->kind == OclExpr::OclIsTypeOf);
    CHECK(e->kids[0]->kids[0]->name == "Ready2CM");

    OclPtr cast = rt("o.oclAsType(SentOrder).sentDate = date");
    CHECK(cast->kids[0]->kids[0]->kind == OclExpr::OclAsType);
}

TEST_CASE("let bindings") {
    OclPtr e = rt("let i = Item.allInstances()->select(x | x.lastR) in c.l = i and i.lastR = false");
    REQUIRE(e->kind == OclExpr::Let);
    CHECK(e->var == "i");

    // comma-separated bindings nest.
    OclPtr two = rt("let a = m.zero.r@pre, b = m.zero.r.r@pre in a.r->isEmpty() and m.zero.r = b");
    REQUIRE(two->kind == OclExpr::Let);
    CHECK(two->var == "a");
    REQUIRE(two->kids[1]->kind == OclExpr::Let);
    CHECK(two->kids[1]->var == "b");
}

TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_WITH_AS(ocl::parse("a and"), doctest::Contains("expected"), Error);
    CHECK_THROWS_AS(ocl::parse("->exists(x | x)"), Error);
    CHECK_THROWS_AS(ocl::parse("a b"), Error);  // trailing input
    CHECK_THROWS_AS(ocl::parse("\"unterminated"), Error);
    try {
        ocl::parse("x and\n   @");
        FAIL("expected a diagnostic");
    } catch (const Error& err) {
        CHECK(err.kind() == "SyntaxError");
        CHECK(err.pos().line == 2);
    }
}

TEST_CASE("structural equality is syntax-insensitive") {
    CHECK(ocl::equal(ocl::parse("a and (b)"), ocl::parse("(a) and b")));
    CHECK_FALSE(ocl::equal(ocl::parse("a and b"), ocl::parse("b and a")));
    CHECK_FALSE(ocl::equal(ocl::parse("x.r"), ocl::parse("x.r@pre")));
}

TEST_CASE("conjunct flattening") {
    auto cs = ocl::conjuncts(ocl::parse("a and (b and c) and d"));
    REQUIRE(cs.size() == 4);
    CHECK(cs[0]->name == "a");
    CHECK(cs[3]->name == "d");
    CHECK(ocl::conjuncts(ocl::parse("a or b")).size() == 1);
}

// Random expression generator; printing then reparsing must reproduce the tree.
namespace {

OclPtr gen(std::mt19937& rng, int depth) {
    auto pick = [&](int n) { return static_cast<int>(rng() % n); };
    static const char* vars[] = {"x", "y", "m", "c"};
    static const char* steps[] = {"items", "id", "r", "pc"};
    static const char* classes[] = {"Item", "Order", "Flag"};
    if (depth <= 0) {
        switch (pick(3)) {
            case 0: return ocl::var(vars[pick(4)]);
            case 1: return ocl::const_bool(pick(2) == 0);
            default: return ocl::const_str(pick(2) == 0 ? "a" : "b");
        }
    }
    switch (pick(10)) {
        case 0: return ocl::binary(OclExpr::And, gen(rng, depth - 1), gen(rng, depth - 1));
        case 1: return ocl::binary(OclExpr::Or, gen(rng, depth - 1), gen(rng, depth - 1));
        case 2: return ocl::neg(gen(rng, depth - 1));
        case 3: return ocl::binary(OclExpr::Eq, gen(rng, depth - 1), gen(rng, depth - 1));
        case 4: return ocl::nav(ocl::var(vars[pick(4)]), steps[pick(4)], pick(3) == 0);
        case 5:
            return ocl::binder(OclExpr::Exists, ocl::all_instances(classes[pick(3)]), "v",
                               gen(rng, depth - 1));
        case 6:
            return ocl::binder(OclExpr::ForAll, ocl::nav(ocl::var("m"), "items"), "w",
                               gen(rng, depth - 1));
        case 7: return ocl::is_empty(ocl::nav(ocl::var(vars[pick(4)]), steps[pick(4)]));
        case 8: return ocl::let("t", gen(rng, depth - 1), gen(rng, depth - 1));
        default:
            return ocl::includes(ocl::nav(ocl::var("m"), "items"), gen(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("print/parse round-trip on random trees") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 500; ++i) {
        OclPtr e = gen(rng, 4);
        OclPtr back = ocl::parse(ocl::to_string(e));
        CHECK(ocl::equal(e, back));
    }
}
