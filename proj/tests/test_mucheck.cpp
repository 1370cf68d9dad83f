#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bauml/diag.hpp"
#include "bauml/ground.hpp"
#include "bauml/mucheck.hpp"
#include "bauml/model_io.hpp"
#include "bauml/twocm.hpp"

using namespace bauml;
using namespace bauml::mulp;

namespace {

// Kripke-style system: each state holds one object whose class carries the
// state label.
const int kLabels = 6;

BaumlModel label_model() {
    std::string s;
    for (int i = 0; i < kLabels; ++i)
        s += "class C" + std::to_string(i) + " { attr tag: string; }\n";
    return parse_model(s);
}

TransitionSystem labeled_system(const BaumlModel& m, const std::vector<int>& labels,
                                const std::vector<std::vector<size_t>>& succ) {
    TransitionSystem ts;
    ts.model = m;
    for (int l : labels) {
        Configuration c;
        c.snap.create("C" + std::to_string(l));
        ts.states.push_back(c);
    }
    ts.succ = succ;
    ts.deadlock.assign(labels.size(), false);
    return ts;
}

TransitionSystem random_system(const BaumlModel& m, std::mt19937& rng, size_t max_n) {
    std::uniform_int_distribution<size_t> nd(1, max_n);
    size_t n = nd(rng);
    std::uniform_int_distribution<int> label(0, kLabels - 1);
    std::uniform_int_distribution<size_t> st(0, n - 1);
    std::vector<int> labels;
    std::vector<std::vector<size_t>> succ(n);
    for (size_t i = 0; i < n; ++i) {
        labels.push_back(label(rng));
        std::uniform_int_distribution<int> deg(1, 3);
        int d = deg(rng);
        std::set<size_t> out;
        for (int k = 0; k < d; ++k) out.insert(st(rng));
        succ[i].assign(out.begin(), out.end());
    }
    return labeled_system(m, labels, succ);
}

MuPtr label_goal(const std::set<int>& which) {
    MuPtr f = mk_false();
    for (int i : which)
        f = mk_or(f, quant_class(MuLpFormula::ExistsClass, "x", "C" + std::to_string(i),
                                 mk_true()));
    return f;
}

MuPtr reach(MuPtr goal) {
    return fix(MuLpFormula::Mu, "Y", mk_or(std::move(goal), diamond(fix_var("Y"))));
}

// Random closed formula; negation stays on atoms so fixpoints remain
// monotone.
MuPtr random_formula(std::mt19937& rng, int depth, std::vector<std::string> fixes) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    std::uniform_int_distribution<int> label(0, kLabels - 1);
    switch (pick(rng)) {
        case 0: {
            MuPtr atom = label_goal({label(rng)});
            return std::uniform_int_distribution<int>(0, 1)(rng) ? atom : mk_not(atom);
        }
        case 1:
            if (!fixes.empty() && std::uniform_int_distribution<int>(0, 1)(rng))
                return fix_var(fixes[std::uniform_int_distribution<size_t>(
                    0, fixes.size() - 1)(rng)]);
            return std::uniform_int_distribution<int>(0, 1)(rng) ? mk_true() : mk_false();
        case 2:
            return mk_and(random_formula(rng, depth - 1, fixes),
                          random_formula(rng, depth - 1, fixes));
        case 3:
            return mk_or(random_formula(rng, depth - 1, fixes),
                         random_formula(rng, depth - 1, fixes));
        case 4: return diamond(random_formula(rng, depth - 1, fixes));
        case 5: return box(random_formula(rng, depth - 1, fixes));
        case 6: {
            std::string z = "Z" + std::to_string(fixes.size());
            fixes.push_back(z);
            return fix(MuLpFormula::Mu, z, random_formula(rng, depth - 1, fixes));
        }
        default: {
            std::string z = "Z" + std::to_string(fixes.size());
            fixes.push_back(z);
            return fix(MuLpFormula::Nu, z, random_formula(rng, depth - 1, fixes));
        }
    }
}

bool has_label(const Configuration& c, const std::set<int>& which) {
    for (const auto& [oid, obj] : c.snap.objects)
        for (int i : which)
            if (obj.cls == "C" + std::to_string(i)) return true;
    return false;
}

GroundOptions thm6(int instances, int budget) {
    GroundOptions o;
    o.mode = GroundOptions::Thm6;
    o.instance_bound = instances;
    o.fresh_budget = budget;
    return o;
}

bool edge(const TransitionSystem& ts, size_t a, size_t b) {
    for (size_t t : ts.succ[a])
        if (t == b) return true;
    return false;
}

}  // namespace

TEST_CASE("greatest fixpoint of box holds on a total one-state system") {
    BaumlModel m = label_model();
    TransitionSystem ts = labeled_system(m, {0}, {{0}});
    CHECK(check(ts, fix(MuLpFormula::Nu, "Z", box(fix_var("Z")))).holds);
    CHECK_FALSE(check(ts, fix(MuLpFormula::Mu, "Y", diamond(fix_var("Y")))).holds);
}

TEST_CASE("reachability formulas agree with breadth-first search") {
    BaumlModel m = label_model();
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> label(0, kLabels - 1);
    for (int t = 0; t < 50; ++t) {
        TransitionSystem ts = random_system(m, rng, t < 45 ? 25 : 200);
        for (int g = 0; g < 20; ++g) {
            std::set<int> which{label(rng)};
            if (label(rng) < 3) which.insert(label(rng));
            bool via_mu = check(ts, reach(label_goal(which))).holds;
            bool via_bfs = check_reachability_oracle(
                ts, [&](const Configuration& c) { return has_label(c, which); });
            CAPTURE(t);
            CAPTURE(g);
            CHECK(via_mu == via_bfs);
        }
    }
}

TEST_CASE("negation flips every closed verdict") {
    BaumlModel m = label_model();
    std::mt19937 rng(131);
    for (int t = 0; t < 40; ++t) {
        TransitionSystem ts = random_system(m, rng, 15);
        for (int f = 0; f < 10; ++f) {
            MuPtr phi = random_formula(rng, 4, {});
            if (!free_vars(phi).empty()) continue;
            CAPTURE(to_string(phi));
            CHECK(check(ts, phi).holds == !check(ts, mk_not(phi)).holds);
        }
    }
}

TEST_CASE("modal guards trivialize by polarity when the bound object dies") {
    BaumlModel m = label_model();
    // state 0 has the object, state 1 is empty
    TransitionSystem ts = labeled_system(m, {0, 0}, {{1}, {1}});
    ts.states[1].snap = Snapshot{};

    auto guarded = [](MuLpFormula::Kind k, MuPtr body) {
        MuLpFormula f;
        f.kind = k;
        f.guard = {"x"};
        f.explicit_guard = true;
        f.kids = {std::move(body)};
        return std::make_shared<const MuLpFormula>(std::move(f));
    };
    MuPtr dia = quant_class(MuLpFormula::ExistsClass, "x", "C0",
                            guarded(MuLpFormula::Diamond, mk_true()));
    MuPtr bx = quant_class(MuLpFormula::ExistsClass, "x", "C0",
                           guarded(MuLpFormula::Box, mk_false()));
    CHECK_FALSE(check(ts, dia).holds);
    CHECK(check(ts, bx).holds);
    // with a live successor both collapse to the body
    TransitionSystem alive = labeled_system(m, {0, 0}, {{1}, {1}});
    CHECK(check(alive, dia).holds);
    CHECK_FALSE(check(alive, bx).holds);
}

TEST_CASE("quantification ranges over the state's own active domain") {
    BaumlModel m = label_model();
    TransitionSystem ts = labeled_system(m, {0, 1}, {{1}, {1}});
    // C0 exists now but not after the step
    MuPtr now = label_goal({0});
    CHECK(check(ts, now).holds);
    CHECK_FALSE(check(ts, box(now)).holds);
    CHECK(check(ts, box(label_goal({1}))).holds);
    MuPtr all = quant_class(MuLpFormula::ForAllClass, "x", "C0", mk_false());
    CHECK_FALSE(check(ts, all).holds);
    CHECK(check(ts, box(all)).holds);
}

TEST_CASE("relation atoms and relation quantifiers follow the snapshot links") {
    BaumlModel m = parse_model(
        "class A { attr tag: string; }\n"
        "class B { attr tag: string; }\n"
        "assoc owns (A [0..1] owner -- pets [0..2] B);\n");
    TransitionSystem ts;
    ts.model = m;
    Configuration c;
    Oid a = c.snap.create("A");
    Oid b1 = c.snap.create("B");
    c.snap.create("B");
    c.snap.links.insert({"owns", a, b1});
    ts.states = {c};
    ts.succ = {{0}};
    ts.deadlock = {false};

    MuPtr linked = quant_class(
        MuLpFormula::ExistsClass, "x", "A",
        quant_rel(MuLpFormula::ExistsRel, "y", "owns", "x", true, mk_true()));
    CHECK(check(ts, linked).holds);
    MuPtr every_b_owned = quant_class(
        MuLpFormula::ForAllClass, "y", "B",
        quant_rel(MuLpFormula::ExistsRel, "x", "owns", "y", false, mk_true()));
    CHECK_FALSE(check(ts, every_b_owned).holds);
    MuPtr atom = quant_class(MuLpFormula::ExistsClass, "x", "A",
                             quant_class(MuLpFormula::ExistsClass, "y", "B",
                                         rel_atom("owns", "x", "y")));
    CHECK(check(ts, atom).holds);
}

TEST_CASE("open and non-monotone formulas are diagnosed") {
    BaumlModel m = label_model();
    TransitionSystem ts = labeled_system(m, {0}, {{0}});
    try {
        check(ts, class_atom("C0", "x"));
        FAIL("expected a diagnostic");
    } catch (const Error& e) {
        CHECK(e.kind() == "OpenFormula");
    }
    try {
        check(ts, fix(MuLpFormula::Mu, "Z", mk_not(fix_var("Z"))));
        FAIL("expected a diagnostic");
    } catch (const Error& e) {
        CHECK(e.kind() == "NonMonotone");
    }
}

TEST_CASE("reachability oracle answers its endpoint cases") {
    BaumlModel m = label_model();
    TransitionSystem ts = labeled_system(m, {2, 3}, {{0}, {0}});
    CHECK(check_reachability_oracle(ts, [&](const Configuration& c) {
        return has_label(c, {2});
    }));
    // state 1 exists but nothing reaches it
    CHECK_FALSE(check_reachability_oracle(ts, [&](const Configuration& c) {
        return has_label(c, {3});
    }));
}

TEST_CASE("termination verdicts match the interpreter across the encodings") {
    using namespace twocm;
    struct Case {
        const char* program;
        bool halts;
    };
    const Case suite[] = {
        {"1: INC 1 GOTO 2\n2: DEC 1 ZERO 3 ELSE 2\n3: HALT\n", true},
        {"1: DEC 1 ZERO 2 ELSE 1\n2: HALT\n", true},
        {"1: INC 2 GOTO 2\n2: DEC 2 ZERO 3 ELSE 2\n3: DEC 1 ZERO 4 ELSE 3\n4: HALT\n", true},
        {"1: DEC 1 ZERO 1 ELSE 1\n2: HALT\n", false},
        {"1: DEC 1 ZERO 2 ELSE 1\n2: DEC 1 ZERO 1 ELSE 2\n3: HALT\n", false},
        {"1: INC 1 GOTO 2\n2: DEC 2 ZERO 2 ELSE 2\n3: HALT\n", false},
    };
    for (const Case& cs : suite) {
        CounterMachine mach = parse_machine(cs.program);
        REQUIRE(run(mach, {0, 0}, 10000).halted == cs.halts);
        BaumlModel models[] = {encode_unidirectional(mach), encode_bidirectional(mach),
                               encode_shared(mach)};
        int bounds[] = {1, 1, 2};
        for (int i = 0; i < 3; ++i) {
            CAPTURE(cs.program);
            CAPTURE(i);
            TransitionSystem ts = ground(models[i], thm6(bounds[i], 6));
            CheckResult r = check(ts, termination_property(ts.model));
            CHECK(r.holds == cs.halts);
            if (!r.holds) {
                REQUIRE_FALSE(r.loop.empty());
                if (r.prefix.empty()) {
                    CHECK(r.loop.front() == ts.initial);
                } else {
                    CHECK(r.prefix.front() == ts.initial);
                    for (size_t k = 1; k < r.prefix.size(); ++k)
                        CHECK(edge(ts, r.prefix[k - 1], r.prefix[k]));
                    CHECK(edge(ts, r.prefix.back(), r.loop.front()));
                }
                for (size_t k = 1; k < r.loop.size(); ++k)
                    CHECK(edge(ts, r.loop[k - 1], r.loop[k]));
                CHECK(edge(ts, r.loop.back(), r.loop.front()));
                // the witness is alive and stuck short of the terminal state
                // where the loop starts
                std::string term = ts.model.tstate(*ts.model.class_model.artifacts.begin());
                const Snapshot& entry = ts.states[r.loop.front()].snap;
                REQUIRE(entry.objects.count(r.witness) == 1);
                CHECK(entry.objects.at(r.witness).cls != term);
                // and survives one full turn of the loop back to itself
                Oid o = r.witness;
                for (size_t k = 0; k < r.loop.size(); ++k) {
                    size_t s = r.loop[k];
                    size_t t = r.loop[(k + 1) % r.loop.size()];
                    Oid next = 0;
                    for (size_t e = 0; e < ts.succ[s].size(); ++e)
                        if (ts.succ[s][e] == t && ts.step_oid(s, e, o) != 0 &&
                            ts.states[t].snap.objects.at(ts.step_oid(s, e, o)).cls != term)
                            next = ts.step_oid(s, e, o);
                    REQUIRE(next != 0);
                    o = next;
                }
            }
        }
    }
}
