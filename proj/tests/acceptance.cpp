// Acceptance gate: one pass/fail line per criterion; exit code counts the
// failed criteria.
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bauml/analysis.hpp"
#include "bauml/diag.hpp"
#include "bauml/ground.hpp"
#include "bauml/model_io.hpp"
#include "bauml/mucheck.hpp"
#include "bauml/mulp.hpp"
#include "bauml/twocm.hpp"
#include "validation_fixtures.hpp"

using namespace bauml;
using namespace bauml::mulp;

namespace {

struct Criterion {
    std::vector<std::string> fails;
    double seconds = 0;

    void check(bool cond, const std::string& msg) {
        if (!cond) fails.push_back(msg);
    }
    bool ok() const { return fails.empty(); }
};

std::string corpus_path(const std::string& name) {
    const char* dir = std::getenv("CORPUS_DIR");
    return (dir ? std::string(dir) : std::string("corpus")) + "/" + name;
}

twocm::CounterMachine random_machine(std::mt19937& rng, int max_n) {
    std::uniform_int_distribution<int> len(2, max_n);
    int n = len(rng);
    std::uniform_int_distribution<int> cnt(1, 2), tgt(1, n), kind(0, 1);
    twocm::CounterMachine m;
    for (int k = 1; k < n; ++k) {
        twocm::Command c;
        if (kind(rng)) {
            c.kind = twocm::Command::Inc;
            c.counter = cnt(rng);
            c.goto1 = tgt(rng);
        } else {
            c.kind = twocm::Command::CDec;
            c.counter = cnt(rng);
            c.goto1 = tgt(rng);
            c.goto2 = tgt(rng);
        }
        m.commands.push_back(c);
    }
    m.commands.push_back({});
    return m;
}

GroundOptions thm6_opts(int instances, int budget) {
    GroundOptions o;
    o.mode = GroundOptions::Thm6;
    o.instance_bound = instances;
    o.fresh_budget = budget;
    return o;
}

// The desk-scale fidelity suite: three halting machines (small counters,
// short runs) and three with a reachable loop.
struct FidelityCase {
    const char* program;
    bool halts;
};
const FidelityCase kSuite[] = {
    {"1: INC 1 GOTO 2\n2: DEC 1 ZERO 3 ELSE 2\n3: HALT\n", true},
    {"1: DEC 1 ZERO 2 ELSE 1\n2: HALT\n", true},
    {"1: INC 2 GOTO 2\n2: DEC 2 ZERO 3 ELSE 2\n3: DEC 1 ZERO 4 ELSE 3\n4: HALT\n", true},
    {"1: DEC 1 ZERO 1 ELSE 1\n2: HALT\n", false},
    {"1: DEC 1 ZERO 2 ELSE 1\n2: DEC 1 ZERO 1 ELSE 2\n3: HALT\n", false},
    {"1: INC 1 GOTO 2\n2: DEC 2 ZERO 2 ELSE 2\n3: HALT\n", false},
};

// ---------------------------------------------------------------------------
// 1. each table encoding lands in its theorem class with the right axes
// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
    std::mt19937 rng(7);
    for (int t = 0; t < 10; ++t) {
        twocm::CounterMachine m = random_machine(rng, 8);
        std::string tag = "machine " + std::to_string(t) + ": ";

        AnalysisReport r1 = analyze(twocm::encode_unrestricted(m));
        c.check(r1.verdict == Verdict::UndecidableThm1, tag + "table 1 verdict");
        c.check(!r1.navigational.navigational, tag + "table 1 must be non-navigational");

        AnalysisReport r2 = analyze(twocm::encode_unidirectional(m));
        c.check(r2.verdict == Verdict::UndecidableThm2, tag + "table 2 verdict");
        c.check(r2.navigational.navigational, tag + "table 2 must be navigational");
        c.check(r2.directionality.kind == Directionality::Unidirectional,
                tag + "table 2 must be unidirectional");
        c.check(!r2.cardinality.bounded, tag + "table 2 must be cardinality-unbounded");

        AnalysisReport r3 = analyze(twocm::encode_bidirectional(m));
        c.check(r3.verdict == Verdict::UndecidableThm4, tag + "table 3 verdict");
        c.check(r3.navigational.navigational, tag + "table 3 must be navigational");
        c.check(r3.directionality.kind == Directionality::Bidirectional,
                tag + "table 3 must be bidirectional");
        c.check(r3.cardinality.bounded && r3.cardinality.max_upper == 1,
                tag + "table 3 must be 1-cardinality-bounded");

        AnalysisReport r4 = analyze(twocm::encode_shared(m));
        c.check(r4.verdict == Verdict::UndecidableThm5UnlessBounded, tag + "table 4 verdict");
        c.check(r4.navigational.navigational, tag + "table 4 must be navigational");
        c.check(r4.directionality.kind == Directionality::Unidirectional,
                tag + "table 4 must be unidirectional");
        c.check(r4.cardinality.bounded, tag + "table 4 must be cardinality-bounded");
        c.check(r4.shared_instances.kind == SharedInstances::ReadWrite,
                tag + "table 4 must share read-write instances");
    }
}

// ---------------------------------------------------------------------------
// 2. the shop corpus model classifies as decidable
// ---------------------------------------------------------------------------

void criterion2(Criterion& c) {
    AnalysisReport r = analyze(parse_model_file(corpus_path("shop.bauml")));
    c.check(r.navigational.navigational, "shop must be navigational");
    c.check(r.directionality.kind == Directionality::Unidirectional,
            "shop must be unidirectional");
    c.check(r.cardinality.bounded, "shop must be cardinality-bounded");
    c.check(r.shared_instances.kind == SharedInstances::ReadOnlyOnly,
            "shop shared instances must be read-only only");
    c.check(r.verdict == Verdict::DecidableThm3, "shop verdict must be DECIDABLE_THM3");
    c.check(r.partition.read_only.count("ItemType") == 1, "ItemType must be read-only");
}

// ---------------------------------------------------------------------------
// 3. termination checks agree with the interpreter on each encoding
// ---------------------------------------------------------------------------

void criterion3(Criterion& c, std::vector<TransitionSystem>& grounded) {
    for (const FidelityCase& cs : kSuite) {
        twocm::CounterMachine mach = twocm::parse_machine(cs.program);
        twocm::RunResult run = twocm::run(mach, {0, 0}, 10000);
        std::string tag = std::string("machine `") + cs.program + "`: ";
        c.check(run.halted == cs.halts, tag + "interpreter outcome");
        if (cs.halts) {
            c.check(run.steps <= 25, tag + "halting run must take at most 25 steps");
            c.check(run.max_counter <= 3, tag + "halting run must keep counters at most 3");
        }
        BaumlModel models[] = {twocm::encode_unidirectional(mach),
                               twocm::encode_bidirectional(mach), twocm::encode_shared(mach)};
        const char* names[] = {"unidirectional", "bidirectional", "shared"};
        int bounds[] = {1, 1, 2};
        for (int i = 0; i < 3; ++i) {
            auto start = std::chrono::steady_clock::now();
            TransitionSystem ts = ground(models[i], thm6_opts(bounds[i], 6));
            CheckResult r = check(ts, termination_property(ts.model));
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                        start).count();
            c.check(r.holds == cs.halts, tag + names[i] + " termination verdict");
            c.check(state_count(ts) <= 1000000, tag + names[i] + " state budget");
            c.check(secs <= 120.0, tag + names[i] + " exceeded two minutes");
            grounded.push_back(std::move(ts));
        }
    }
}

// ---------------------------------------------------------------------------
// 4. fixpoint reachability agrees with breadth-first search; duality holds
// ---------------------------------------------------------------------------

MuPtr reach(MuPtr goal) {
    return fix(MuLpFormula::Mu, "Y", mk_or(std::move(goal), diamond(fix_var("Y"))));
}

void criterion4(Criterion& c, const std::vector<TransitionSystem>& grounded) {
    std::mt19937 rng(23);
    auto probe = [&](const TransitionSystem& ts, const std::string& where) {
        std::vector<std::string> classes;
        for (const ClassDecl& cd : ts.model.class_model.classes) classes.push_back(cd.name);
        std::uniform_int_distribution<size_t> pick(0, classes.size() - 1);
        for (int g = 0; g < 20; ++g) {
            std::string cls = classes[pick(rng)];
            MuPtr goal = quant_class(MuLpFormula::ExistsClass, "x", cls, mk_true());
            MuPtr phi = reach(goal);
            bool via_mu = check(ts, phi).holds;
            bool via_bfs = check_reachability_oracle(ts, [&](const Configuration& cf) {
                return !cf.snap.instances_of(ts.model, cls).empty();
            });
            c.check(via_mu == via_bfs, where + ": reach(" + cls + ") disagrees with BFS");
            c.check(check(ts, mk_not(phi)).holds == !via_mu,
                    where + ": duality fails on reach(" + cls + ")");
        }
    };
    for (size_t i = 0; i < grounded.size(); ++i)
        probe(grounded[i], "grounded system " + std::to_string(i));

    // random Kripke structures: one object per state, class = label
    std::string decls;
    for (int i = 0; i < 6; ++i)
        decls += "class C" + std::to_string(i) + " { attr tag: string; }\n";
    BaumlModel label_model = parse_model(decls);
    std::uniform_int_distribution<int> label(0, 5);
    for (int t = 0; t < 50; ++t) {
        std::uniform_int_distribution<size_t> nd(1, 200);
        size_t n = nd(rng);
        TransitionSystem ts;
        ts.model = label_model;
        std::uniform_int_distribution<size_t> st(0, n - 1);
        for (size_t i = 0; i < n; ++i) {
            Configuration cf;
            cf.snap.create("C" + std::to_string(label(rng)));
            ts.states.push_back(cf);
            std::set<size_t> out;
            std::uniform_int_distribution<int> deg(1, 3);
            int d = deg(rng);
            for (int k = 0; k < d; ++k) out.insert(st(rng));
            ts.succ.emplace_back(out.begin(), out.end());
        }
        ts.deadlock.assign(n, false);
        probe(ts, "kripke " + std::to_string(t));
    }
}

// ---------------------------------------------------------------------------
// 5. the generated termination property has the documented shape
// ---------------------------------------------------------------------------

void criterion5(Criterion& c) {
    BaumlModel m = parse_model_file(corpus_path("shop.bauml"));
    MuPtr t = termination_property(m);
    MuPtr display = parse_property(
        "nu Z. (forall x: Order. mu Y. SentOrder(x) \\/ Order(x) /\\ <> Y)"
        " /\\ (forall x: SupplierRequest."
        " mu Y. ReceivedSuppRequest(x) \\/ SupplierRequest(x) /\\ <> Y)"
        " /\\ [] Z");
    c.check(equal(t, display), "termination property differs from the display formula");
    c.check(is_pseudo_navigational(t).ok, "termination property must be in the grammar");
    c.check(navigationally_compatible(t, m).compatible,
            "termination property must be navigationally compatible");
}

// ---------------------------------------------------------------------------
// 6. the compatibility rules decide hand-built cases with named traces
// ---------------------------------------------------------------------------

void criterion6(Criterion& c) {
    BaumlModel m = parse_model_file(corpus_path("shop.bauml"));
    RoleClassification roles = classify_roles(m);
    struct Case {
        const char* cls;
        const char* text;
        bool compatible;
        int rule;  // expected deciding rule at the trace root
    };
    const Case cases[] = {
        {"Order", "true", true, 1},
        {"Order", "Z", true, 1},
        {"Order", "SentOrder(x)", true, 2},
        {"Order", "Item(x)", false, 2},
        {"Order", "SentOrder(x) \\/ RequestedOrder(x)", true, 3},
        {"Order", "SentOrder(x) /\\ Item(x)", false, 3},
        {"Order", "mu Y. SentOrder(x) \\/ Y", true, 4},
        {"Order", "nu Y. Item(x)", false, 4},
        {"Order", "exists y: ItemType. true", false, 5},
        {"Order", "forall y: ItemType. true", false, 5},
        {"Order", "exists y: buys(x,.). ItemType(y)", true, 6},
        {"Item", "exists y: has(x,.). ItemType(y)", false, 6},
        {"ItemType", "exists y: has(.,x). Item(y)", true, 7},
        {"ItemType", "forall y: buys(.,x). true", false, 7},
        {"Order", "Order(x) /\\ <> true", true, 8},
        {"Order", "Item(x) -> [] true", false, 8},
    };
    for (const Case& cs : cases) {
        CompatibilityResult r = comp(cs.cls, "x", parse_property(cs.text), m, roles);
        std::string tag = std::string("comp(") + cs.cls + ", `" + cs.text + "`): ";
        c.check(r.compatible == cs.compatible, tag + "verdict");
        c.check(!r.trace.empty() && r.trace.back().rule == cs.rule,
                tag + "deciding rule must be " + std::to_string(cs.rule));
        if (!r.trace.empty())
            c.check(!r.trace.back().formula.empty(), tag + "trace must name the formula");
    }
}

// ---------------------------------------------------------------------------
// 7. no reachable snapshot exceeds the computed object bound
// ---------------------------------------------------------------------------

void criterion7(Criterion& c) {
    BaumlModel m = parse_model_file(corpus_path("shop.bauml"));
    AnalysisReport r = analyze(m);
    c.check(r.verdict == Verdict::DecidableThm3, "bound check needs a decidable model");
    // one creation slot per artifact: at most two instances beyond the seed
    ObjectBound bound = object_bound(m, r.cardinality.max_upper, 2);
    struct Setup {
        const char* db;  // nullptr = empty initial database
        int fresh;
    };
    const char* seed =
        "object 1 : ItemType\n"
        "attr 1.id = \"mug\"\n"
        "object 2 : Item\n"
        "attr 2.serialNr = \"sn1\"\n"
        "link has 2 1\n";
    const Setup setups[] = {{nullptr, 2}, {seed, 3}};
    for (const Setup& s : setups) {
        GroundOptions o;
        o.mode = GroundOptions::Thm3;
        o.fresh_budget = s.fresh;
        if (s.db) o.initial_db = parse_initial_db(m, s.db);
        TransitionSystem ts = ground(m, o);
        size_t max_objects = 0;
        for (const Configuration& cf : ts.states)
            max_objects = std::max(max_objects, cf.snap.objects.size());
        std::string tag = s.db ? "seeded shop: " : "empty shop: ";
        c.check(max_objects <= bound.system_bound,
                tag + std::to_string(max_objects) + " objects exceed the bound " +
                    std::to_string(bound.system_bound));
    }
}

// ---------------------------------------------------------------------------
// 8. folding the input into the program preserves the run outcome
// ---------------------------------------------------------------------------

void criterion8(Criterion& c) {
    std::mt19937 rng(41);
    std::uniform_int_distribution<long> input(0, 3);
    for (int t = 0; t < 20; ++t) {
        twocm::CounterMachine m = random_machine(rng, 6);
        long d1 = input(rng), d2 = input(rng);
        twocm::RunResult direct = twocm::run(m, {d1, d2}, 500);
        twocm::RunResult folded = twocm::run(twocm::normalize_input(m, d1, d2), {0, 0}, 500);
        std::string tag = "pair " + std::to_string(t) + " <" + std::to_string(d1) + "," +
                          std::to_string(d2) + ">: ";
        c.check(direct.halted == folded.halted, tag + "halting outcome differs");
        if (direct.halted && folded.halted) {
            c.check(direct.final_counters == folded.final_counters,
                    tag + "final counters differ");
            c.check(folded.steps == direct.steps + d1 + d2, tag + "step accounting differs");
        }
    }
}

// ---------------------------------------------------------------------------
// 9. serialization round-trips; every validation variant has a fixture
// ---------------------------------------------------------------------------

void criterion9(Criterion& c) {
    std::vector<BaumlModel> all{parse_model_file(corpus_path("shop.bauml"))};
    for (const FidelityCase& cs : kSuite) {
        twocm::CounterMachine mach = twocm::parse_machine(cs.program);
        all.push_back(twocm::encode_unrestricted(mach));
        all.push_back(twocm::encode_unidirectional(mach));
        all.push_back(twocm::encode_bidirectional(mach));
        all.push_back(twocm::encode_shared(mach));
    }
    for (size_t i = 0; i < all.size(); ++i) {
        std::string text = serialize_model(all[i]);
        BaumlModel back = parse_model(text);
        std::string tag = "model " + std::to_string(i) + ": ";
        c.check(structurally_equal(all[i], back), tag + "parse(serialize) is not the identity");
        c.check(serialize_model(back) == text, tag + "serialization is not a fixpoint");
    }

    std::set<std::string> covered;
    for (const auto& [variant, text] : validation_fixtures()) {
        covered.insert(variant);
        try {
            parse_model(text);
            c.check(false, "fixture for " + variant + " did not fail");
        } catch (const Error& e) {
            c.check(e.kind() == "ValidationError." + variant,
                    "fixture for " + variant + " failed with " + e.kind());
        }
    }
    for (const std::string& variant : validation_variants())
        c.check(covered.count(variant) == 1, "no fixture for variant " + variant);
}

}  // namespace

int main() {
    struct Entry {
        const char* label;
        double limit;  // seconds; 0 = no limit on the criterion as a whole
        void (*fn)(Criterion&);
    };

    std::vector<TransitionSystem> grounded;
    int failed = 0;
    int id = 0;
    auto report = [&](const char* label, double limit, Criterion& c) {
        ++id;
        if (limit > 0 && c.seconds > limit)
            c.fails.push_back("took " + std::to_string(c.seconds) + "s, limit " +
                              std::to_string(limit) + "s");
        std::cout << "criterion " << id << ": " << (c.ok() ? "PASS" : "FAIL") << "  " << label;
        std::ostringstream secs;
        secs.precision(2);
        secs << std::fixed << c.seconds;
        std::cout << " (" << secs.str() << "s)\n";
        for (size_t i = 0; i < c.fails.size() && i < 10; ++i)
            std::cout << "    " << c.fails[i] << "\n";
        if (c.fails.size() > 10)
            std::cout << "    ... " << (c.fails.size() - 10) << " more\n";
        if (!c.ok()) ++failed;
    };
    auto timed = [&](auto&& fn) {
        Criterion c;
        auto start = std::chrono::steady_clock::now();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.fails.push_back(std::string("unexpected exception: ") + e.what());
        }
        c.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return c;
    };

    {
        Criterion c = timed([](Criterion& c) { criterion1(c); });
        report("table encodings classify into their theorem axis profiles", 5.0, c);
    }
    {
        Criterion c = timed([](Criterion& c) { criterion2(c); });
        report("shop corpus model is navigational, unidirectional, bounded, decidable", 1.0, c);
    }
    {
        Criterion c = timed([&](Criterion& c) { criterion3(c, grounded); });
        report("termination verdicts match the interpreter across three encodings", 0, c);
    }
    {
        Criterion c = timed([&](Criterion& c) { criterion4(c, grounded); });
        report("fixpoint reachability agrees with BFS and respects duality", 0, c);
    }
    {
        Criterion c = timed([](Criterion& c) { criterion5(c); });
        report("termination property matches the display formula and its fragment", 0, c);
    }
    {
        Criterion c = timed([](Criterion& c) { criterion6(c); });
        report("compatibility rules decide sixteen hand-built cases", 0, c);
    }
    {
        Criterion c = timed([](Criterion& c) { criterion7(c); });
        report("reachable snapshots stay under the computed object bound", 0, c);
    }
    {
        Criterion c = timed([](Criterion& c) { criterion8(c); });
        report("input normalization preserves run outcomes", 0, c);
    }
    {
        Criterion c = timed([](Criterion& c) { criterion9(c); });
        report("serialization round-trips and every validation variant fails", 0, c);
    }
    return failed;
}
