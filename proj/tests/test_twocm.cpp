#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bauml/analysis.hpp"
#include "bauml/diag.hpp"
#include "bauml/model_io.hpp"
#include "bauml/twocm.hpp"

using namespace bauml;
using namespace bauml::twocm;

namespace {

CounterMachine mk(std::initializer_list<Command> cmds) {
    CounterMachine m;
    m.commands = cmds;
    validate(m);
    return m;
}

Command inc(int c, int g) { return Command{Command::Inc, c, g, 0}; }
Command dec(int c, int gz, int gd) { return Command{Command::CDec, c, gz, gd}; }
Command halt() { return Command{Command::Halt, 0, 0, 0}; }

CounterMachine random_machine(std::mt19937& rng, int max_n) {
    std::uniform_int_distribution<int> nd(1, max_n);
    int n = nd(rng);
    std::uniform_int_distribution<int> kind(0, 1);
    std::uniform_int_distribution<int> counter(1, 2);
    std::uniform_int_distribution<int> target(1, n);
    CounterMachine m;
    for (int k = 1; k < n; ++k) {
        if (kind(rng) == 0) m.commands.push_back(inc(counter(rng), target(rng)));
        else m.commands.push_back(dec(counter(rng), target(rng), target(rng)));
    }
    m.commands.push_back(halt());
    validate(m);
    return m;
}

}  // namespace

TEST_CASE("trivial machine halts immediately") {
    RunResult r = run(mk({halt()}), {0, 0}, 100, true);
    CHECK(r.halted);
    CHECK(r.steps == 0);
    CHECK(r.final_counters == std::vector<long>{0, 0});
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].first == 1);
}

TEST_CASE("inc then conditional-decrement looping back to the inc never halts") {
    // pc 2 always sees counter 1 = 1, decrements and returns to pc 1, which
    // bumps it back: the zero branch is unreachable
    CounterMachine m = mk({inc(1, 2), dec(1, 3, 1), halt()});
    RunResult r = run(m, {0, 0}, 1000, true);
    CHECK_FALSE(r.halted);
    CHECK(r.steps == 1000);
    CHECK(r.max_counter == 1);
    // the run alternates between pc 1 (c1=0) and pc 2 (c1=1)
    CHECK(r.trace[0] == std::pair<int, std::vector<long>>(1, {0, 0}));
    CHECK(r.trace[1] == std::pair<int, std::vector<long>>(2, {1, 0}));
    CHECK(r.trace[2] == std::pair<int, std::vector<long>>(1, {0, 0}));
}

TEST_CASE("inc then conditional-decrement falling through to halt") {
    CounterMachine m = mk({inc(1, 2), dec(1, 3, 2), halt()});
    RunResult r = run(m, {0, 0}, 100, true);
    CHECK(r.halted);
    CHECK(r.steps == 3);  // inc, dec, then the zero branch reaches halt
    CHECK(r.final_counters == std::vector<long>{0, 0});
    CHECK(r.max_counter == 1);
}

TEST_CASE("conditional decrement self-loop at zero runs forever") {
    CounterMachine m = mk({dec(1, 1, 1), halt()});
    RunResult r = run(m, {0, 0}, 5000);
    CHECK_FALSE(r.halted);
    CHECK(r.steps == 5000);
}

TEST_CASE("interpreter rejects malformed input vectors") {
    CounterMachine m = mk({halt()});
    CHECK_THROWS_AS(run(m, {0}, 10), Error);
    CHECK_THROWS_AS(run(m, {0, 0, 0}, 10), Error);
    try {
        run(m, {1, -1}, 10);
        FAIL("expected a diagnostic");
    } catch (const Error& e) {
        CHECK(e.kind() == "BadInput");
    }
}

TEST_CASE("machine invariants are enforced") {
    CounterMachine no_halt;
    no_halt.commands = {inc(1, 1)};
    CHECK_THROWS_AS(validate(no_halt), Error);
    CounterMachine bad_goto;
    bad_goto.commands = {inc(1, 5), halt()};
    CHECK_THROWS_AS(validate(bad_goto), Error);
    CounterMachine bad_counter;
    bad_counter.counters = 2;
    bad_counter.commands = {inc(3, 1), halt()};
    CHECK_THROWS_AS(validate(bad_counter), Error);
}

TEST_CASE("machine text round-trips and rejects malformed programs") {
    std::string text = "1: INC 1 GOTO 2\n2: DEC 2 ZERO 3 ELSE 1\n3: HALT\n";
    CounterMachine m = parse_machine(text);
    CHECK(serialize_machine(m) == text);
    CHECK(m.counters == 2);
    REQUIRE(m.commands.size() == 3);
    CHECK(m.commands[0].kind == Command::Inc);
    CHECK(m.commands[1].goto1 == 3);
    CHECK(m.commands[1].goto2 == 1);

    CHECK_NOTHROW(parse_machine("# comment\n\n1: HALT\n"));
    CHECK_THROWS_AS(parse_machine("2: HALT\n"), Error);
    CHECK_THROWS_AS(parse_machine("1: JMP 2\n"), Error);
    CHECK_THROWS_AS(parse_machine("1: INC 1 GOTO 2\n"), Error);
    CHECK_THROWS_AS(parse_machine("1: HALT extra\n"), Error);

    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        CounterMachine r = random_machine(rng, 8);
        CHECK(serialize_machine(parse_machine(serialize_machine(r))) == serialize_machine(r));
    }
}

TEST_CASE("input normalization matches the prepend-and-shift shape") {
    CounterMachine m = mk({halt()});
    CHECK(serialize_machine(normalize_input(m, 0, 0)) == serialize_machine(m));
    CounterMachine shifted = normalize_input(m, 2, 0);
    CHECK(serialize_machine(shifted) ==
          "1: INC 1 GOTO 2\n2: INC 1 GOTO 3\n3: HALT\n");
    CounterMachine both = normalize_input(mk({dec(1, 2, 1), halt()}), 1, 1);
    CHECK(serialize_machine(both) ==
          "1: INC 1 GOTO 2\n2: INC 2 GOTO 3\n3: DEC 1 ZERO 4 ELSE 3\n4: HALT\n");
}

TEST_CASE("normalized machines agree with the interpreter on the original input") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<long> d(0, 3);
    const long budget = 500;
    for (int t = 0; t < 40; ++t) {
        CounterMachine m = random_machine(rng, 8);
        long d1 = d(rng), d2 = d(rng);
        RunResult direct = run(m, {d1, d2}, budget);
        RunResult normalized = run(normalize_input(m, d1, d2), {0, 0}, budget);
        CAPTURE(serialize_machine(m));
        CAPTURE(d1);
        CAPTURE(d2);
        if (direct.halted && direct.steps + d1 + d2 <= budget) {
            CHECK(normalized.halted);
            CHECK(normalized.steps == direct.steps + d1 + d2);
            CHECK(normalized.final_counters == direct.final_counters);
        } else if (!direct.halted) {
            CHECK_FALSE(normalized.halted);
        }
    }
}

TEST_CASE("free-creation encoding is classified as unrestricted") {
    CounterMachine m = mk({inc(1, 2), dec(1, 3, 2), halt()});
    BaumlModel b = encode_unrestricted(m);
    AnalysisReport r = analyze(b);
    CHECK(r.verdict == Verdict::UndecidableThm1);
    CHECK_FALSE(r.navigational.navigational);
    bool zero_guard_witnessed = false;
    for (const auto& w : r.navigational.witnesses)
        if (w.find("Item1.allInstances()") != std::string::npos) zero_guard_witnessed = true;
    CHECK(zero_guard_witnessed);
}

TEST_CASE("item-bag encoding is navigational but cardinality-unbounded") {
    CounterMachine m = mk({inc(2, 2), dec(2, 3, 2), halt()});
    BaumlModel b = encode_unidirectional(m);
    AnalysisReport r = analyze(b);
    CHECK(r.navigational.navigational);
    CHECK(r.directionality.kind == Directionality::Unidirectional);
    CHECK_FALSE(r.cardinality.bounded);
    CHECK(r.cardinality.unbounded_role == "items");
    CHECK(r.verdict == Verdict::UndecidableThm2);
}

TEST_CASE("chain encoding of the trivial machine is 1-bounded bidirectional") {
    BaumlModel b = encode_bidirectional(mk({halt()}));
    std::set<std::string> classes;
    for (const auto& c : b.class_model.classes) classes.insert(c.name);
    CHECK(classes == std::set<std::string>{"TwoCM", "Ready2CM", "Halted2CM", "Item"});
    std::set<std::string> assocs;
    for (const auto& a : b.class_model.associations) assocs.insert(a.name);
    CHECK(assocs == std::set<std::string>{"zeroOf", "chain"});
    AnalysisReport r = analyze(b);
    CHECK(r.navigational.navigational);
    CHECK(r.cardinality.bounded);
    CHECK(r.cardinality.max_upper == 1);
    CHECK(r.directionality.kind == Directionality::Bidirectional);
    CHECK(r.verdict == Verdict::UndecidableThm4);
}

TEST_CASE("shared-chain encoding needs an instance bound to become decidable") {
    CounterMachine m = mk({inc(1, 2), dec(2, 3, 1), halt()});
    BaumlModel b = encode_shared(m);
    AnalysisReport r = analyze(b);
    CHECK(r.navigational.navigational);
    CHECK(r.directionality.kind == Directionality::Unidirectional);
    CHECK(r.cardinality.bounded);
    CHECK(r.cardinality.max_upper == 1);
    CHECK(r.shared_instances.kind == SharedInstances::ReadWrite);
    CHECK(r.shared_instances.witness.find("Item.allInstances()") != std::string::npos);
    CHECK(r.verdict == Verdict::UndecidableThm5UnlessBounded);

    AnalysisOptions opt;
    opt.instance_bound = 2;
    CHECK(analyze(b, opt).verdict == Verdict::DecidableThm6IfInstanceBounded);
}

TEST_CASE("every encoder lands in its theorem class on random machines") {
    std::mt19937 rng(113);
    for (int t = 0; t < 12; ++t) {
        CounterMachine m = random_machine(rng, 8);
        CAPTURE(serialize_machine(m));
        CHECK(analyze(encode_unrestricted(m)).verdict == Verdict::UndecidableThm1);
        CHECK(analyze(encode_unidirectional(m)).verdict == Verdict::UndecidableThm2);
        CHECK(analyze(encode_bidirectional(m)).verdict == Verdict::UndecidableThm4);
        CHECK(analyze(encode_shared(m)).verdict == Verdict::UndecidableThm5UnlessBounded);
    }
}

TEST_CASE("encoder outputs survive a serialize/parse round trip") {
    std::mt19937 rng(271);
    for (int t = 0; t < 6; ++t) {
        CounterMachine m = random_machine(rng, 6);
        CAPTURE(serialize_machine(m));
        for (BaumlModel b : {encode_unrestricted(m), encode_unidirectional(m),
                             encode_bidirectional(m), encode_shared(m)}) {
            BaumlModel again = parse_model(serialize_model(b));
            CHECK(structurally_equal(b, again));
        }
    }
}
