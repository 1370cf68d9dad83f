#ifndef BAUML_GROUND_HPP
#define BAUML_GROUND_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bauml/model.hpp"
#include "bauml/snapshot.hpp"

namespace bauml {

// One running activity: an artifact instance working through an event's
// diagram. `anchor` is 0 while a creation activity has not yet minted its
// instance.
struct Process {
    Oid anchor = 0;
    std::string event;
    std::string node;
    std::string source_state;  // lifecycle state the transition left
    std::string target_state;  // state entered when the process retires

    bool operator==(const Process& o) const;
    bool operator<(const Process& o) const;
};

// Global system state: information base plus running processes plus the
// remaining fresh-value and instance-creation budgets.
struct Configuration {
    Snapshot snap;
    std::vector<Process> processes;
    int fresh_used = 0;
    std::map<std::string, int> slots;  // artifact (or "*") -> creations left
};

struct GroundOptions {
    Snapshot initial_db;
    enum Mode { Thm3, Thm6 } mode = Thm6;
    // Thm6: total artifact creations allowed. Thm3 ignores it and grants
    // one creation slot per artifact type on top of the initial database.
    int instance_bound = 1;
    int fresh_budget = 8;
    std::vector<std::string> fresh_pool;  // defaults to f1..fN
    size_t max_states = 1000000;
    // When set, every reachable snapshot must stay at or under this many
    // objects; a breach throws Error("BoundViolation").
    std::optional<unsigned long> object_bound;
};

struct TransitionSystem {
    BaumlModel model;
    std::vector<Configuration> states;
    size_t initial = 0;
    std::vector<std::vector<size_t>> succ;
    // Stored states are canonical representatives, so an object can carry a
    // different identifier in a successor than in its predecessor. Each edge
    // records the surviving objects' identifier mapping into the stored
    // successor; edge_map[s][k] belongs to the edge s -> succ[s][k]. Empty
    // for hand-built systems, meaning identifiers carry over unchanged.
    std::vector<std::vector<std::map<Oid, Oid>>> edge_map;
    // True where the state had no successor and got the stabilizing
    // self-loop.
    std::vector<bool> deadlock;

    // Identifier of `o` after taking edge k out of state s; 0 when the
    // object does not survive the step.
    Oid step_oid(size_t s, size_t k, Oid o) const;
};

// Breadth-first construction of every reachable configuration. Successor
// steps: spawn an enabled lifecycle activity for an idle instance, spawn a
// creation activity while slots remain (one creation in flight at a time),
// or advance one process by one diagram node. Snapshots violating upper
// cardinalities or key uniqueness are pruned. Throws BudgetExceeded,
// StateLimit, BoundViolation, InconsistentRetyping.
TransitionSystem ground(const BaumlModel& m, const GroundOptions& opts);

size_t state_count(const TransitionSystem& ts);

// Instances per declared class (subclasses included), per state.
std::map<std::string, std::set<Oid>> class_extensions(const BaumlModel& m, const Snapshot& s);
std::vector<std::map<std::string, std::set<Oid>>> reachable_classes(const TransitionSystem& ts);

// Symmetry-reduced fingerprint: object identifiers renamed by a
// link-structure refinement order, fresh values by first occurrence.
// Configurations with equal keys are merged during grounding.
std::string canonical_key(const BaumlModel& m, const Configuration& c,
                          const std::set<std::string>& fresh_values);

// Initial database text: `object <n> : <Class>`, `attr <n>.<a> = "<v>"` or
// `= true|false`, `link <assoc> <dom> <img>`, `#` comments.
Snapshot parse_initial_db(const BaumlModel& m, const std::string& text);
Snapshot parse_initial_db_file(const BaumlModel& m, const std::string& path);

// Edge-list plus state-table dump for external tools.
std::string ts_to_json(const TransitionSystem& ts);

}  // namespace bauml

#endif
