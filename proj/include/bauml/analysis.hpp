#ifndef BAUML_ANALYSIS_HPP
#define BAUML_ANALYSIS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bauml/model.hpp"

namespace bauml {

// Partition of all classes and associations into the read-only set ro(M)
// and the read-write set rw(M). Artifacts are always read-write.
struct RwPartition {
    std::set<std::string> read_only;
    std::set<std::string> read_write;

    bool is_read_write(const std::string& name) const { return read_write.count(name) != 0; }
};

// A role is a target role iff some expression in the model navigates it.
struct RoleClassification {
    std::set<std::string> target_roles;
    std::set<std::string> source_roles;

    bool is_target(const std::string& role) const { return target_roles.count(role) != 0; }
};

// Class dependency edge: `from` reaches `to` by navigating `role`.
// Nodes are hierarchy roots; a class and its sub/superclasses are one node.
struct DependencyEdge {
    std::string from;
    std::string to;
    std::string role;
};

struct DependencyGraph {
    std::set<std::string> nodes;
    std::vector<DependencyEdge> edges;
};

DependencyGraph dependency_graph(const BaumlModel& m, const RoleClassification& roles);

enum class Directionality { Unidirectional, Bidirectional };

struct DirectionalityResult {
    Directionality kind = Directionality::Unidirectional;
    std::vector<std::string> cycle;  // node sequence, first == last, when bidirectional
};

struct CardinalityResult {
    bool bounded = true;
    unsigned max_upper = 1;          // N; floored at 1 when no target role exists
    std::string unbounded_role;      // first target role with upper `*`
};

struct NavigationalResult {
    bool navigational = true;
    std::vector<std::string> witnesses;
};

enum class SharedInstances { None, ReadOnlyOnly, ReadWrite };

struct SharedResult {
    SharedInstances kind = SharedInstances::None;
    std::string witness;                    // ReadWrite: the offending free query
    std::set<std::string> shared_classes;   // read-only classes reached by free lookups
};

enum class Verdict {
    DecidableThm3,
    DecidableThm6IfInstanceBounded,
    UndecidableThm1,
    UndecidableThm2,
    UndecidableThm4,
    UndecidableThm5UnlessBounded,
};

std::string verdict_name(Verdict v);
std::string verdict_citation(Verdict v);

struct ObjectBound {
    unsigned long long k = 0;             // number of associations
    unsigned long long n = 1;             // max target-role upper bound
    unsigned long long l = 0;             // longest navigational path from an artifact
    unsigned long long per_instance = 0;  // (k*n)^(l+1)
    unsigned long long system_bound = 0;  // (b+1)*(k*n)^(l+1), floored at b+1
    unsigned b_init = 0;
};

struct AnalysisOptions {
    unsigned b_init = 0;
    // Declared cap on simultaneously active artifact instances; turns a
    // read-write-shared verdict into a decidable instance-bounded one.
    std::optional<unsigned> instance_bound;
};

struct AnalysisReport {
    RwPartition partition;
    RoleClassification roles;
    NavigationalResult navigational;
    DirectionalityResult directionality;
    CardinalityResult cardinality;
    SharedResult shared_instances;
    Verdict verdict = Verdict::DecidableThm3;
    std::string citation;
    std::optional<ObjectBound> bound;  // present when the bound formula applies
};

RwPartition derive_rw_partition(const BaumlModel& m);
RoleClassification classify_roles(const BaumlModel& m);
DirectionalityResult directionality(const BaumlModel& m, const RoleClassification& roles,
                                    const RwPartition& partition);
CardinalityResult cardinality_check(const BaumlModel& m, const RoleClassification& roles);
NavigationalResult navigational_check(const BaumlModel& m, const RwPartition& partition);
SharedResult shared_instance_check(const BaumlModel& m, const RwPartition& partition);

// Pure decision table over the four classification axes.
Verdict decide_verdict(bool navigational, bool unidirectional, bool bounded,
                       SharedInstances shared, bool instance_bounded);

// Throws Error("PreconditionViolated", ...) unless the model is
// navigational, unidirectional, and cardinality-bounded.
ObjectBound object_bound(const BaumlModel& m, unsigned n, unsigned b_init);

AnalysisReport analyze(const BaumlModel& m, const AnalysisOptions& options = {});

std::string report_to_json(const AnalysisReport& report);

}  // namespace bauml

#endif
