#ifndef BAUML_MODEL_HPP
#define BAUML_MODEL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bauml/ocl.hpp"

namespace bauml {

inline constexpr unsigned kUnbounded = ~0u;

struct Cardinality {
    unsigned lower = 0;
    unsigned upper = kUnbounded;  // kUnbounded encodes '*'

    bool bounded() const { return upper != kUnbounded; }
    std::string str() const {
        std::string u = bounded() ? std::to_string(upper) : "*";
        return std::to_string(lower) + ".." + u;
    }
};

struct Attribute {
    std::string name;
    enum Kind { String, Boolean } kind = String;
    bool is_key = false;
};

struct ClassDecl {
    std::string name;
    std::optional<std::string> super;  // direct isa parent
    std::vector<Attribute> attributes;
    bool is_terminal_state = false;
};

struct AssocDecl {
    std::string name;
    std::string domain_class;
    std::string domain_role;   // dom_r(R): names the domain object seen from the image side
    std::string image_class;
    std::string image_role;    // im_r(R): names the image objects seen from the domain side
    Cardinality domain_card;   // how many domain objects per image object
    Cardinality image_card;    // how many image objects per domain object
};

struct ClassModel {
    std::vector<ClassDecl> classes;
    std::vector<AssocDecl> associations;
    std::set<std::string> artifacts;       // arts(M)
    std::set<std::string> readonly_marks;  // author-declared read-only classes/assocs

    const ClassDecl* find_class(const std::string& name) const;
    const AssocDecl* find_assoc(const std::string& name) const;
    // Association with image_role == role (forward navigation) or nullptr.
    const AssocDecl* assoc_by_image_role(const std::string& role) const;
    const AssocDecl* assoc_by_domain_role(const std::string& role) const;
};

struct LifecycleTransition {
    std::string source;  // state name or kPreInitial
    std::string event;
    OclPtr guard;        // never null; defaults to Const(true)
    std::string target;
};

inline const std::string kPreInitial = "PRE_INITIAL";

struct StateMachine {
    std::string artifact;
    std::vector<std::string> states;  // V = subart(artifact)
    std::string initial;              // v0
    std::vector<LifecycleTransition> transitions;

    std::set<std::string> events() const;
};

struct ActivityNode {
    enum Kind { Initial, Final, Task, Decision, Merge } kind = Task;
    std::string id;
    std::string task;  // Task nodes: contract name
};

struct ActivityEdge {
    std::string from;
    std::string to;
    OclPtr guard;  // null = unguarded
};

struct ActivityDiagram {
    std::string event;
    std::string anchor;  // variable naming the artifact instance in scope
    std::vector<ActivityNode> nodes;
    std::vector<ActivityEdge> edges;

    const ActivityNode* find_node(const std::string& id) const;
    std::vector<const ActivityEdge*> out_edges(const std::string& id) const;
};

struct TaskParam {
    std::string name;
    enum Kind { String, Boolean, ArtifactRef } kind = String;
    std::string ref_class;  // ArtifactRef only
};

struct TaskContract {
    std::string name;
    std::vector<TaskParam> params;
    std::optional<std::string> result;
    OclPtr pre;   // never null; defaults to Const(true)
    OclPtr post;  // never null
};

struct BaumlModel {
    ClassModel class_model;
    std::vector<OclPtr> constraints;  // the set O: stored, key/disjointness enforced elsewhere
    std::vector<StateMachine> state_machines;
    std::vector<ActivityDiagram> activities;
    std::map<std::string, TaskContract> contracts;

    const StateMachine* machine_for(const std::string& artifact) const;
    const ActivityDiagram* activity_for(const std::string& event) const;
    const TaskContract* contract_for(const std::string& task) const;

    // Hierarchy queries over the isa forest.
    bool is_subclass(const std::string& a, const std::string& b) const;  // a ⊑ b
    std::string hierarchy_root(const std::string& cls) const;
    // Artifact root of cls's hierarchy; throws UnknownClass if cls undeclared.
    std::string parentart(const std::string& cls) const;
    std::vector<std::string> subart(const std::string& artifact) const;  // isa-leaves
    std::string tstate(const std::string& artifact) const;
    bool same_hierarchy(const std::string& a, const std::string& b) const;
    // Key attribute of the hierarchy containing cls, if any (keys are inherited).
    std::optional<std::string> key_attribute(const std::string& cls) const;
    // All attributes visible on cls (inherited + own).
    std::vector<Attribute> all_attributes(const std::string& cls) const;
    // artcl(M): artifacts plus every class in an artifact hierarchy.
    std::set<std::string> artifact_classes() const;
    // True if the init activity of some artifact contains this task/event.
    bool is_init_event(const std::string& event) const;
    bool is_init_task(const std::string& task) const;

    // Checks every type invariant; throws ValidationError.* on the first breach.
    void validate() const;
};

bool structurally_equal(const BaumlModel& a, const BaumlModel& b);

}  // namespace bauml

#endif
