#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <regex>

#include <json.hpp>

#include "bauml/analysis.hpp"
#include "bauml/diag.hpp"
#include "bauml/model_io.hpp"

using namespace bauml;

namespace {

BaumlModel load_shop() {
    const char* dir = std::getenv("CORPUS_DIR");
    REQUIRE(dir != nullptr);
    return parse_model_file(std::string(dir) + "/shop.bauml");
}

// Two-state artifact harness: Boot creates a RunM, Step runs task Act.
std::string two_step_model(const std::string& decls, const std::string& act_task) {
    return decls + R"(
artifact M;
statemachine M {
  initial RunM;
  state RunM;
  state DoneM;
  transition PRE_INITIAL -> RunM on Boot;
  transition RunM -> DoneM on Step;
}
activity Boot anchor m {
  initial n0;
  task t1 = Init;
  final n9;
  edge n0 -> t1;
  edge t1 -> n9;
}
activity Step anchor m {
  initial n0;
  task t1 = Act;
  final n9;
  edge n0 -> t1;
  edge t1 -> n9;
}
task Init(id: string): RunM {
  pre: not (M.allInstances()->exists(x | x.id = id));
  post: RunM.allInstances()->exists(x | x.oclIsNew() and x.id = id and result = x);
}
)" + act_task;
}

const std::string kBaseDecls = R"(
class M { key attr id: string; }
class RunM isa M {}
class DoneM isa M terminal {}
)";

}  // namespace

TEST_CASE("shop model classifies as decidable with a read-only catalogue") {
    BaumlModel m = load_shop();
    AnalysisReport r = analyze(m);

    CHECK(r.partition.read_only == std::set<std::string>{"Item", "ItemType", "has"});
    CHECK(r.partition.read_write ==
          std::set<std::string>{"Order", "PlacedSuppRequest", "ReceivedSuppRequest",
                                "RequestedOrder", "SentOrder", "SupplierRequest", "buys",
                                "makes", "requests"});

    CHECK(r.roles.target_roles ==
          std::set<std::string>{"item", "itemOfType", "itemType", "reqItemType"});
    CHECK(r.roles.source_roles ==
          std::set<std::string>{"orderThatBuys", "requestThatAsks", "sentOrder", "type"});

    CHECK(r.navigational.navigational);
    CHECK(r.navigational.witnesses.empty());
    CHECK(r.directionality.kind == Directionality::Unidirectional);
    CHECK(r.cardinality.bounded);
    CHECK(r.cardinality.max_upper == 10);
    CHECK(r.shared_instances.kind == SharedInstances::ReadOnlyOnly);
    CHECK(r.shared_instances.shared_classes == std::set<std::string>{"ItemType"});
    CHECK(r.verdict == Verdict::DecidableThm3);

    REQUIRE(r.bound.has_value());
    CHECK(r.bound->k == 4);
    CHECK(r.bound->n == 10);
    CHECK(r.bound->l == 2);
    CHECK(r.bound->per_instance == 64000);
    CHECK(r.bound->system_bound == 64000);
}

TEST_CASE("partition covers everything and forces artifacts read-write") {
    BaumlModel m = load_shop();
    RwPartition p = derive_rw_partition(m);
    std::set<std::string> all;
    for (const auto& c : m.class_model.classes) all.insert(c.name);
    for (const auto& a : m.class_model.associations) all.insert(a.name);
    std::set<std::string> covered = p.read_only;
    covered.insert(p.read_write.begin(), p.read_write.end());
    CHECK(covered == all);
    for (const auto& art : m.class_model.artifacts) CHECK(p.is_read_write(art));
    std::set<std::string> both;
    for (const auto& n : p.read_only)
        if (p.read_write.count(n)) both.insert(n);
    CHECK(both.empty());
}

TEST_CASE("free creation outside the init activity breaks navigability") {
    std::string decls = kBaseDecls + R"(
class Thing { attr tag: string; }
assoc keeps (M [0..1] holder -- things [0..*] Thing);
)";
    std::string act = R"(
task Act(m: M, tag: string) {
  post: Thing.allInstances()->exists(t | t.oclIsNew() and t.tag = tag);
}
)";
    BaumlModel m = parse_model(two_step_model(decls, act));
    AnalysisReport r = analyze(m);
    CHECK(r.partition.is_read_write("Thing"));
    CHECK_FALSE(r.navigational.navigational);
    REQUIRE_FALSE(r.navigational.witnesses.empty());
    CHECK(r.navigational.witnesses[0].find("Thing.allInstances()") != std::string::npos);
    // the untouched association contributes only source roles and no bound
    CHECK(r.roles.target_roles.empty());
    CHECK(r.roles.source_roles == std::set<std::string>{"holder", "things"});
    CHECK(r.cardinality.bounded);
    CHECK(r.cardinality.max_upper == 1);
    CHECK(r.verdict == Verdict::UndecidableThm1);
}

TEST_CASE("free reads in contracts defer to the shared-instance axis") {
    std::string decls = kBaseDecls + R"(
class Thing { key attr tag: string; }
assoc keeps (M [0..1] holder -- things [0..2] Thing);
)";
    std::string act = R"(
task Act(m: M, tag: string) {
  pre: Thing.allInstances()->exists(t | t.tag = tag);
  post: m.things->exists(t | t.oclIsNew() and t.tag = tag);
}
)";
    BaumlModel m = parse_model(two_step_model(decls, act));
    AnalysisReport r = analyze(m);
    CHECK(r.partition.is_read_write("Thing"));
    CHECK(r.navigational.navigational);
    CHECK(r.shared_instances.kind == SharedInstances::ReadWrite);
    CHECK(r.shared_instances.witness.find("Thing.allInstances()") != std::string::npos);
    CHECK(r.verdict == Verdict::UndecidableThm5UnlessBounded);
}

TEST_CASE("free keyed deletion outside the init activity breaks navigability") {
    std::string decls = kBaseDecls + R"(
class Thing { key attr tag: string; }
assoc keeps (M [0..1] holder -- things [0..2] Thing);
)";
    std::string act = R"(
task Mk(m: M, tag: string) {
  post: m.things->exists(t | t.oclIsNew() and t.tag = tag);
}
task Act(m: M, tag: string) {
  post: not (Thing.allInstances()->exists(t | t.tag = tag));
}
)";
    BaumlModel m = parse_model(two_step_model(decls, act));
    AnalysisReport r = analyze(m);
    CHECK_FALSE(r.navigational.navigational);
    REQUIRE_FALSE(r.navigational.witnesses.empty());
    CHECK(r.navigational.witnesses[0].find("Act") != std::string::npos);
    CHECK(r.verdict == Verdict::UndecidableThm1);
}

TEST_CASE("run guards must stay navigational but creation guards are exempt") {
    std::string decls = kBaseDecls + R"(
class Thing { key attr tag: string; }
assoc keeps (M [0..1] holder -- things [0..2] Thing);
)";
    std::string act = R"(
task Act(m: M) {
  post: not m.oclIsTypeOf(RunM) and m.oclIsTypeOf(DoneM);
}
)";
    std::string init_guarded = std::regex_replace(
        two_step_model(decls, act), std::regex("transition PRE_INITIAL -> RunM on Boot;"),
        "transition PRE_INITIAL -> RunM on Boot guard: Thing.allInstances()->isEmpty();");
    init_guarded = std::regex_replace(
        init_guarded, std::regex("and result = x\\);"),
        "and result = x) and result.things->exists(t | t.oclIsNew() and t.tag = id);");
    AnalysisReport a = analyze(parse_model(init_guarded));
    CHECK(a.partition.is_read_write("Thing"));
    CHECK(a.navigational.navigational);
    CHECK(a.shared_instances.kind == SharedInstances::ReadWrite);

    std::string run_guarded = std::regex_replace(
        init_guarded, std::regex("transition RunM -> DoneM on Step;"),
        "transition RunM -> DoneM on Step guard: not (Thing.allInstances()->isEmpty());");
    AnalysisReport b = analyze(parse_model(run_guarded));
    CHECK_FALSE(b.navigational.navigational);
    REQUIRE_FALSE(b.navigational.witnesses.empty());
    CHECK(b.navigational.witnesses[0].find("Step") != std::string::npos);
    CHECK(b.verdict == Verdict::UndecidableThm1);
}

TEST_CASE("unbounded target role is undecidable") {
    std::string decls = kBaseDecls + R"(
class Itm { attr tag: string; }
assoc owns (M [0..1] owner -- items [0..*] Itm);
)";
    std::string act = R"(
task Act(m: M, tag: string) {
  post: m.items->exists(i | i.oclIsNew() and i.tag = tag);
}
)";
    BaumlModel m = parse_model(two_step_model(decls, act));
    AnalysisReport r = analyze(m);
    CHECK(r.navigational.navigational);
    CHECK(r.directionality.kind == Directionality::Unidirectional);
    CHECK(r.roles.target_roles == std::set<std::string>{"items"});
    CHECK_FALSE(r.cardinality.bounded);
    CHECK(r.cardinality.unbounded_role == "items");
    CHECK(r.shared_instances.kind == SharedInstances::None);
    CHECK(r.verdict == Verdict::UndecidableThm2);
    CHECK_FALSE(r.bound.has_value());
    CHECK_THROWS_WITH_AS(object_bound(m, 1, 0),
                         doctest::Contains("bounded"), Error);
}

TEST_CASE("self-dependent read-write class is bidirectional") {
    std::string decls = kBaseDecls + R"(
class Itm { attr tag: string; }
assoc owns (M [0..1] owner -- items [0..2] Itm);
assoc chain (Itm [0..1] prev -- next [0..1] Itm);
)";
    std::string act = R"(
task Act(m: M, tag: string) {
  post: m.items->exists(i | i.oclIsNew() and i.tag = tag)
        and m.items->forAll(i | i.next->isEmpty() and i.prev->isEmpty());
}
)";
    BaumlModel m = parse_model(two_step_model(decls, act));
    AnalysisReport r = analyze(m);
    CHECK(r.roles.target_roles == std::set<std::string>{"items", "next", "prev"});
    CHECK(r.directionality.kind == Directionality::Bidirectional);
    REQUIRE(r.directionality.cycle.size() >= 2);
    CHECK(r.directionality.cycle.front() == r.directionality.cycle.back());
    CHECK(std::count(r.directionality.cycle.begin(), r.directionality.cycle.end(), "Itm") >= 1);
    CHECK(r.verdict == Verdict::UndecidableThm4);
    CHECK_THROWS_WITH_AS(object_bound(m, 2, 0),
                         doctest::Contains("unidirectional"), Error);
}

TEST_CASE("free read-write query in init means shared read-write instances") {
    std::string decls = kBaseDecls + R"(
class B { attr flag: boolean; }
assoc sees (M [0..*] seenBy -- seen [0..1] B);
)";
    std::string model_text = two_step_model(decls, R"(
task Act(m: M) {
  post: not m.oclIsTypeOf(RunM) and m.oclIsTypeOf(DoneM);
}
)");
    // the init task also creates a shared B and looks it up globally
    model_text = std::regex_replace(
        model_text, std::regex("and result = x\\);"),
        "and result = x) and B.allInstances()->exists(b | b.oclIsNew()) "
        "and result.seen = B.allInstances();");
    BaumlModel m = parse_model(model_text);
    AnalysisReport r = analyze(m);
    CHECK(r.partition.is_read_write("B"));
    CHECK(r.navigational.navigational);
    CHECK(r.directionality.kind == Directionality::Unidirectional);
    CHECK(r.cardinality.bounded);
    CHECK(r.shared_instances.kind == SharedInstances::ReadWrite);
    CHECK(r.shared_instances.witness.find("B.allInstances()") != std::string::npos);
    CHECK(r.verdict == Verdict::UndecidableThm5UnlessBounded);
    REQUIRE(r.bound.has_value());
    CHECK(r.bound->k == 1);
    CHECK(r.bound->n == 1);
    CHECK(r.bound->l == 1);
    CHECK(r.bound->per_instance == 1);

    AnalysisOptions opt;
    opt.instance_bound = 2;
    AnalysisReport rb = analyze(m, opt);
    CHECK(rb.verdict == Verdict::DecidableThm6IfInstanceBounded);
    REQUIRE(rb.bound.has_value());
    CHECK(rb.bound->system_bound == 2);
}

TEST_CASE("model without associations bounds the system to the artifacts") {
    std::string act = R"(
task Act(m: M) {
  post: not m.oclIsTypeOf(RunM) and m.oclIsTypeOf(DoneM);
}
)";
    BaumlModel m = parse_model(two_step_model(kBaseDecls, act));
    AnalysisReport r = analyze(m);
    CHECK(r.partition.read_only.empty());
    CHECK(r.verdict == Verdict::DecidableThm3);
    CHECK(r.shared_instances.kind == SharedInstances::None);
    ObjectBound b = object_bound(m, 1, 3);
    CHECK(b.k == 0);
    CHECK(b.per_instance == 0);
    CHECK(b.system_bound == 4);
}

TEST_CASE("verdict decision table is total and deterministic") {
    for (int nav = 0; nav <= 1; ++nav)
        for (int uni = 0; uni <= 1; ++uni)
            for (int bounded = 0; bounded <= 1; ++bounded)
                for (int shared = 0; shared <= 2; ++shared)
                    for (int ib = 0; ib <= 1; ++ib) {
                        Verdict v = decide_verdict(nav, uni, bounded,
                                                   static_cast<SharedInstances>(shared), ib);
                        CHECK(verdict_name(v) != "UNKNOWN");
                        CHECK_FALSE(verdict_citation(v).empty());
                        if (!nav) CHECK(v == Verdict::UndecidableThm1);
                        else if (!uni) CHECK(v == Verdict::UndecidableThm4);
                        else if (!bounded) CHECK(v == Verdict::UndecidableThm2);
                        else if (shared == 2)
                            CHECK(v == (ib ? Verdict::DecidableThm6IfInstanceBounded
                                           : Verdict::UndecidableThm5UnlessBounded));
                        else CHECK(v == Verdict::DecidableThm3);
                    }
}

TEST_CASE("classification is invariant under renaming classes and roles") {
    const char* dir = std::getenv("CORPUS_DIR");
    REQUIRE(dir != nullptr);
    BaumlModel original = load_shop();
    std::string text = serialize_model(original);
    for (const char* name :
         {"Order", "RequestedOrder", "SentOrder", "SupplierRequest", "PlacedSuppRequest",
          "ReceivedSuppRequest", "ItemType", "Item", "buys", "has", "makes", "requests",
          "orderThatBuys", "itemType", "itemOfType", "type", "sentOrder", "item",
          "reqItemType", "requestThatAsks"})
        text = std::regex_replace(text, std::regex("\\b" + std::string(name) + "\\b"),
                                  std::string(name) + "Z");
    BaumlModel renamed = parse_model(text);

    AnalysisReport a = analyze(original);
    AnalysisReport b = analyze(renamed);
    CHECK(a.directionality.kind == b.directionality.kind);
    CHECK(a.cardinality.bounded == b.cardinality.bounded);
    CHECK(a.cardinality.max_upper == b.cardinality.max_upper);
    CHECK(a.navigational.navigational == b.navigational.navigational);
    CHECK(a.shared_instances.kind == b.shared_instances.kind);
    CHECK(a.verdict == b.verdict);
    CHECK(a.partition.read_only.size() == b.partition.read_only.size());
    CHECK(a.roles.target_roles.size() == b.roles.target_roles.size());
    CHECK(b.roles.target_roles.count("itemTypeZ") == 1);
}

TEST_CASE("json report round-trips through a parser") {
    BaumlModel m = load_shop();
    AnalysisReport r = analyze(m);
    nlohmann::json j = nlohmann::json::parse(report_to_json(r));
    CHECK(j["verdict"]["name"] == "DECIDABLE_THM3");
    CHECK(j["directionality"]["kind"] == "UNIDIRECTIONAL");
    CHECK(j["cardinality"]["kind"] == "BOUNDED");
    CHECK(j["cardinality"]["n"] == 10);
    CHECK(j["shared_instances"]["kind"] == "READ_ONLY_ONLY");
    CHECK(j["partition"]["read_only"].size() == 3);
    CHECK(j["navigational"]["flag"] == true);
    CHECK(j["bound"]["system"] == 64000);
}
