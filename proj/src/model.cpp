#include "bauml/model.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "bauml/diag.hpp"
#include "bauml/enf.hpp"

namespace bauml {

const ClassDecl* ClassModel::find_class(const std::string& name) const {
    for (const auto& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

const AssocDecl* ClassModel::find_assoc(const std::string& name) const {
    for (const auto& a : associations)
        if (a.name == name) return &a;
    return nullptr;
}

const AssocDecl* ClassModel::assoc_by_image_role(const std::string& role) const {
    for (const auto& a : associations)
        if (a.image_role == role) return &a;
    return nullptr;
}

const AssocDecl* ClassModel::assoc_by_domain_role(const std::string& role) const {
    for (const auto& a : associations)
        if (a.domain_role == role) return &a;
    return nullptr;
}

std::set<std::string> StateMachine::events() const {
    std::set<std::string> out;
    for (const auto& t : transitions) out.insert(t.event);
    return out;
}

const ActivityNode* ActivityDiagram::find_node(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

std::vector<const ActivityEdge*> ActivityDiagram::out_edges(const std::string& id) const {
    std::vector<const ActivityEdge*> out;
    for (const auto& e : edges)
        if (e.from == id) out.push_back(&e);
    return out;
}

const StateMachine* BaumlModel::machine_for(const std::string& artifact) const {
    for (const auto& sm : state_machines)
        if (sm.artifact == artifact) return &sm;
    return nullptr;
}

const ActivityDiagram* BaumlModel::activity_for(const std::string& event) const {
    for (const auto& ad : activities)
        if (ad.event == event) return &ad;
    return nullptr;
}

const TaskContract* BaumlModel::contract_for(const std::string& task) const {
    auto it = contracts.find(task);
    return it == contracts.end() ? nullptr : &it->second;
}

bool BaumlModel::is_subclass(const std::string& a, const std::string& b) const {
    std::string cur = a;
    for (int depth = 0; depth <= static_cast<int>(class_model.classes.size()); ++depth) {
        if (cur == b) return true;
        const ClassDecl* c = class_model.find_class(cur);
        if (!c || !c->super) return false;
        cur = *c->super;
    }
    return false;
}

std::string BaumlModel::hierarchy_root(const std::string& cls) const {
    std::string cur = cls;
    for (int depth = 0; depth <= static_cast<int>(class_model.classes.size()); ++depth) {
        const ClassDecl* c = class_model.find_class(cur);
        if (!c)
            throw Error("UnknownClass", "unknown class '" + cur + "'");
        if (!c->super) return cur;
        cur = *c->super;
    }
    throw validation_error("IsaCycle", SourcePos{}, "isa cycle through '" + cls + "'");
}

std::string BaumlModel::parentart(const std::string& cls) const {
    std::string root = hierarchy_root(cls);
    if (!class_model.artifacts.count(root))
        throw Error("UnknownClass", "'" + cls + "' is not in an artifact hierarchy");
    return root;
}

std::vector<std::string> BaumlModel::subart(const std::string& artifact) const {
    if (!class_model.find_class(artifact))
        throw Error("UnknownClass", "unknown class '" + artifact + "'");
    std::vector<std::string> leaves;
    for (const auto& c : class_model.classes) {
        if (!is_subclass(c.name, artifact)) continue;
        bool has_child = std::any_of(class_model.classes.begin(), class_model.classes.end(),
                                     [&](const ClassDecl& d) { return d.super == c.name; });
        if (!has_child) leaves.push_back(c.name);
    }
    return leaves;
}

std::string BaumlModel::tstate(const std::string& artifact) const {
    for (const auto& leaf : subart(artifact)) {
        const ClassDecl* c = class_model.find_class(leaf);
        if (c && c->is_terminal_state) return leaf;
    }
    throw Error("MissingTerminalState", "artifact '" + artifact + "' has no terminal state");
}

bool BaumlModel::same_hierarchy(const std::string& a, const std::string& b) const {
    return hierarchy_root(a) == hierarchy_root(b);
}

std::optional<std::string> BaumlModel::key_attribute(const std::string& cls) const {
    // Keys are declared on one class of the hierarchy and inherited everywhere.
    std::string root = hierarchy_root(cls);
    for (const auto& c : class_model.classes) {
        if (!is_subclass(c.name, root)) continue;
        for (const auto& a : c.attributes)
            if (a.is_key) return a.name;
    }
    return std::nullopt;
}

std::vector<Attribute> BaumlModel::all_attributes(const std::string& cls) const {
    std::vector<Attribute> out;
    std::string cur = cls;
    while (true) {
        const ClassDecl* c = class_model.find_class(cur);
        if (!c) break;
        for (const auto& a : c->attributes) out.push_back(a);
        if (!c->super) break;
        cur = *c->super;
    }
    return out;
}

std::set<std::string> BaumlModel::artifact_classes() const {
    std::set<std::string> out;
    for (const auto& art : class_model.artifacts) {
        for (const auto& c : class_model.classes)
            if (is_subclass(c.name, art)) out.insert(c.name);
    }
    return out;
}

bool BaumlModel::is_init_event(const std::string& event) const {
    for (const auto& sm : state_machines)
        for (const auto& t : sm.transitions)
            if (t.source == kPreInitial && t.event == event) return true;
    return false;
}

bool BaumlModel::is_init_task(const std::string& task) const {
    for (const auto& ad : activities) {
        if (!is_init_event(ad.event)) continue;
        for (const auto& n : ad.nodes)
            if (n.kind == ActivityNode::Task && n.task == task) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

// Checks an embedded OCL expression: names resolve, variables are bound,
// @pre / oclIsNew only where allowed.
void check_expr(const BaumlModel& m, const OclPtr& e, std::set<std::string> bound,
                bool in_post, const std::string& where) {
    if (!e) return;
    switch (e->kind) {
        case OclExpr::AllInstances:
            if (!m.class_model.find_class(e->name))
                throw validation_error("UnknownName", e->pos, where + ": unknown class '" + e->name + "'");
            return;
        case OclExpr::Var:
            if (!bound.count(e->name))
                throw validation_error("UnboundVariable", e->pos, where + ": unbound variable '" + e->name + "'");
            return;
        case OclExpr::Nav: {
            if (e->at_pre && !in_post)
                throw validation_error("PreOutsidePost", e->pos,
                                       where + ": @pre outside a postcondition");
            const std::string& step = e->name;
            bool known = m.class_model.assoc_by_image_role(step) ||
                         m.class_model.assoc_by_domain_role(step);
            if (!known) {
                for (const auto& c : m.class_model.classes)
                    for (const auto& a : c.attributes)
                        if (a.name == step) known = true;
            }
            if (!known)
                throw validation_error("UnknownName", e->pos, where + ": unknown role or attribute '" + step + "'");
            check_expr(m, e->kids[0], bound, in_post, where);
            return;
        }
        case OclExpr::OclIsNew:
            if (!in_post)
                throw validation_error("IsNewOutsidePost", e->pos,
                                       where + ": oclIsNew() outside a postcondition");
            check_expr(m, e->kids[0], bound, in_post, where);
            return;
        case OclExpr::OclIsTypeOf:
        case OclExpr::OclAsType:
            if (!m.class_model.find_class(e->name))
                throw validation_error("UnknownName", e->pos, where + ": unknown class '" + e->name + "'");
            check_expr(m, e->kids[0], bound, in_post, where);
            return;
        case OclExpr::Exists:
        case OclExpr::ForAll:
        case OclExpr::Select: {
            check_expr(m, e->kids[0], bound, in_post, where);
            bound.insert(e->var);
            check_expr(m, e->kids[1], bound, in_post, where);
            return;
        }
        case OclExpr::Let: {
            check_expr(m, e->kids[0], bound, in_post, where);
            bound.insert(e->var);
            check_expr(m, e->kids[1], bound, in_post, where);
            return;
        }
        default:
            for (const auto& k : e->kids) check_expr(m, k, bound, in_post, where);
            return;
    }
}

}  // namespace

void BaumlModel::validate() const {
    const ClassModel& cm = class_model;

    // isa forest: no cycles, supers declared.
    for (const auto& c : cm.classes) {
        if (c.super && !cm.find_class(*c.super))
            throw validation_error("UnknownClass", SourcePos{},
                                   "class '" + c.name + "' extends unknown '" + *c.super + "'");
        std::string cur = c.name;
        int steps = 0;
        while (true) {
            const ClassDecl* d = cm.find_class(cur);
            if (!d || !d->super) break;
            cur = *d->super;
            if (++steps > static_cast<int>(cm.classes.size()))
                throw validation_error("IsaCycle", SourcePos{}, "isa cycle through '" + c.name + "'");
        }
    }
    {
        std::set<std::string> seen;
        for (const auto& c : cm.classes)
            if (!seen.insert(c.name).second)
                throw validation_error("DuplicateClass", SourcePos{}, "class '" + c.name + "' declared twice");
    }

    // artifacts are declared hierarchy roots with a non-empty leaf set.
    for (const auto& art : cm.artifacts) {
        const ClassDecl* c = cm.find_class(art);
        if (!c)
            throw validation_error("ArtifactNotDeclared", SourcePos{}, "artifact '" + art + "' is not a declared class");
        if (c->super)
            throw validation_error("ArtifactNotRoot", SourcePos{}, "artifact '" + art + "' is not a hierarchy root");
    }

    // at most one key per class, keys not redeclared below a keyed ancestor.
    for (const auto& c : cm.classes) {
        int own = 0;
        for (const auto& a : c.attributes) own += a.is_key ? 1 : 0;
        if (own > 1)
            throw validation_error("MultipleKeys", SourcePos{}, "class '" + c.name + "' has two key attributes");
        if (own == 1 && c.super) {
            std::string cur = *c.super;
            while (true) {
                const ClassDecl* d = cm.find_class(cur);
                if (!d) break;
                for (const auto& a : d->attributes)
                    if (a.is_key)
                        throw validation_error("MultipleKeys", SourcePos{},
                                               "class '" + c.name + "' redeclares inherited key");
                if (!d->super) break;
                cur = *d->super;
            }
        }
    }

    // exactly one terminal leaf per artifact hierarchy; terminal only on leaves.
    for (const auto& c : cm.classes) {
        if (!c.is_terminal_state) continue;
        bool has_child = std::any_of(cm.classes.begin(), cm.classes.end(),
                                     [&](const ClassDecl& d) { return d.super == c.name; });
        if (has_child)
            throw validation_error("TerminalNotLeaf", SourcePos{}, "terminal state '" + c.name + "' has subclasses");
    }
    for (const auto& art : cm.artifacts) {
        int n = 0;
        for (const auto& leaf : subart(art)) {
            const ClassDecl* c = cm.find_class(leaf);
            if (c && c->is_terminal_state) ++n;
        }
        if (n == 0)
            throw validation_error("NoTerminalState", SourcePos{}, "artifact '" + art + "' has no terminal state");
        if (n > 1)
            throw validation_error("TwoTerminalStates", SourcePos{}, "artifact '" + art + "' has two terminal states");
    }

    // associations: declared ends, sane cardinalities, unambiguous roles.
    {
        std::set<std::string> names;
        for (const auto& a : cm.associations) {
            if (!names.insert(a.name).second)
                throw validation_error("DuplicateAssoc", SourcePos{}, "association '" + a.name + "' declared twice");
            if (!cm.find_class(a.domain_class) || !cm.find_class(a.image_class))
                throw validation_error("UnknownClass", SourcePos{},
                                       "association '" + a.name + "' references an unknown class");
            for (const Cardinality& card : {a.domain_card, a.image_card}) {
                if (card.bounded() && (card.upper < card.lower || card.upper < 1))
                    throw validation_error("BadCardinality", SourcePos{},
                                           "association '" + a.name + "' has upper < max(lower, 1)");
            }
        }
        // navigation resolves roles by name alone, so role names are global:
        // unique across all association ends and disjoint from attribute names.
        std::map<std::string, int> role_names;
        for (const auto& a : cm.associations) {
            role_names[a.domain_role]++;
            role_names[a.image_role]++;
        }
        for (const auto& [role, count] : role_names)
            if (count > 1)
                throw validation_error("AmbiguousRole", SourcePos{},
                                       "role '" + role + "' is used by two association ends");
        for (const auto& c : cm.classes) {
            for (const auto& a : c.attributes)
                if (role_names.count(a.name))
                    throw validation_error("AmbiguousRole", SourcePos{},
                                           "'" + a.name + "' names both an attribute and a role");
            auto attrs = all_attributes(c.name);
            std::set<std::string> seen_attrs;
            for (const auto& a : attrs)
                if (!seen_attrs.insert(a.name).second)
                    throw validation_error("AmbiguousRole", SourcePos{},
                                           "attribute '" + a.name + "' declared twice on '" + c.name + "'");
        }
    }

    // readonly marks must name something.
    for (const auto& r : cm.readonly_marks)
        if (!cm.find_class(r) && !cm.find_assoc(r))
            throw validation_error("UnknownName", SourcePos{}, "readonly mark '" + r + "' names nothing");

    // state machines.
    {
        std::set<std::string> covered;
        for (const auto& sm : state_machines) {
            if (!cm.artifacts.count(sm.artifact))
                throw validation_error("MachineForNonArtifact", SourcePos{},
                                       "state machine for non-artifact '" + sm.artifact + "'");
            if (!covered.insert(sm.artifact).second)
                throw validation_error("DuplicateStateMachine", SourcePos{},
                                       "two state machines for '" + sm.artifact + "'");
            auto leaves = subart(sm.artifact);
            std::set<std::string> want(leaves.begin(), leaves.end());
            std::set<std::string> got(sm.states.begin(), sm.states.end());
            if (want != got)
                throw validation_error("StatesMismatch", SourcePos{},
                                       "states of machine '" + sm.artifact + "' do not mirror subart");
            if (!got.count(sm.initial))
                throw validation_error("BadInitialState", SourcePos{},
                                       "initial state '" + sm.initial + "' not in machine '" + sm.artifact + "'");
            for (const auto& t : sm.transitions) {
                if (t.source == kPreInitial) {
                    if (t.target != sm.initial)
                        throw validation_error("BadInitialTransition", SourcePos{},
                                               "creation transition of '" + sm.artifact + "' must target '" +
                                                   sm.initial + "'");
                } else if (!got.count(t.source)) {
                    throw validation_error("UnknownState", SourcePos{},
                                           "transition from unknown state '" + t.source + "'");
                }
                if (!got.count(t.target))
                    throw validation_error("UnknownState", SourcePos{},
                                           "transition to unknown state '" + t.target + "'");
            }
        }
        for (const auto& art : cm.artifacts)
            if (!covered.count(art))
                throw validation_error("MissingStateMachine", SourcePos{},
                                       "artifact '" + art + "' has no state machine");
    }

    // every event has exactly one activity diagram.
    {
        std::set<std::string> diagrams;
        for (const auto& ad : activities)
            if (!diagrams.insert(ad.event).second)
                throw validation_error("DuplicateActivity", SourcePos{},
                                       "two activity diagrams for event '" + ad.event + "'");
        for (const auto& sm : state_machines)
            for (const auto& ev : sm.events())
                if (!diagrams.count(ev))
                    throw validation_error("EventWithoutActivity", SourcePos{},
                                           "event '" + ev + "' has no activity diagram");
    }

    // activity diagram structure.
    for (const auto& ad : activities) {
        int initials = 0, finals = 0;
        std::set<std::string> ids;
        for (const auto& n : ad.nodes) {
            if (!ids.insert(n.id).second)
                throw validation_error("DuplicateNode", SourcePos{},
                                       "activity '" + ad.event + "': duplicate node '" + n.id + "'");
            if (n.kind == ActivityNode::Initial) ++initials;
            if (n.kind == ActivityNode::Final) ++finals;
            if (n.kind == ActivityNode::Task && !contracts.count(n.task))
                throw validation_error("UnknownTask", SourcePos{},
                                       "activity '" + ad.event + "': task '" + n.task + "' has no contract");
        }
        if (initials != 1)
            throw validation_error("OneInitialNode", SourcePos{},
                                   "activity '" + ad.event + "' needs exactly one initial node");
        if (finals < 1)
            throw validation_error("NoFinalNode", SourcePos{},
                                   "activity '" + ad.event + "' needs a final node");
        for (const auto& e : ad.edges) {
            if (!ids.count(e.from) || !ids.count(e.to))
                throw validation_error("UnknownNodeRef", SourcePos{},
                                       "activity '" + ad.event + "': edge references unknown node");
        }
        for (const auto& n : ad.nodes) {
            auto outs = ad.out_edges(n.id);
            if (n.kind == ActivityNode::Final) {
                if (!outs.empty())
                    throw validation_error("FinalWithSuccessor", SourcePos{},
                                           "activity '" + ad.event + "': final node has outgoing edge");
                continue;
            }
            if (n.kind == ActivityNode::Decision) {
                if (outs.empty())
                    throw validation_error("DecisionWithoutBranch", SourcePos{},
                                           "activity '" + ad.event + "': decision has no branches");
                for (const auto* e : outs)
                    if (!e->guard)
                        throw validation_error("UnguardedDecisionBranch", SourcePos{},
                                               "activity '" + ad.event + "': decision branch without guard");
            } else {
                if (outs.size() != 1 || outs[0]->guard)
                    throw validation_error("BadNodeFanout", SourcePos{},
                                           "activity '" + ad.event + "': node '" + n.id +
                                               "' needs a single unguarded outgoing edge");
            }
        }
        // reachability from the initial node and to some final node.
        std::string init_id;
        for (const auto& n : ad.nodes)
            if (n.kind == ActivityNode::Initial) init_id = n.id;
        std::set<std::string> fwd;
        std::deque<std::string> work{init_id};
        while (!work.empty()) {
            std::string id = work.front();
            work.pop_front();
            if (!fwd.insert(id).second) continue;
            for (const auto* e : ad.out_edges(id)) work.push_back(e->to);
        }
        if (fwd.size() != ad.nodes.size())
            throw validation_error("UnreachableNode", SourcePos{},
                                   "activity '" + ad.event + "' has a node unreachable from initial");
        for (const auto& n : ad.nodes) {
            std::set<std::string> seen;
            std::deque<std::string> q{n.id};
            bool final_found = false;
            while (!q.empty() && !final_found) {
                std::string id = q.front();
                q.pop_front();
                if (!seen.insert(id).second) continue;
                if (ad.find_node(id)->kind == ActivityNode::Final) final_found = true;
                for (const auto* e : ad.out_edges(id)) q.push_back(e->to);
            }
            if (!final_found)
                throw validation_error("FinalUnreachable", SourcePos{},
                                       "activity '" + ad.event + "': no final reachable from '" + n.id + "'");
        }
    }

    // task contracts: anchor parameter, well-scoped expressions, ENF shape.
    for (const auto& [name, tc] : contracts) {
        (void)name;
        // locate the enclosing machine via the activity that uses this task
        const StateMachine* owner = nullptr;
        for (const auto& ad : activities) {
            bool uses = std::any_of(ad.nodes.begin(), ad.nodes.end(), [&](const ActivityNode& n) {
                return n.kind == ActivityNode::Task && n.task == tc.name;
            });
            if (!uses) continue;
            for (const auto& sm : state_machines)
                if (sm.events().count(ad.event)) owner = &sm;
        }
        if (owner && !is_init_task(tc.name)) {
            bool ok = !tc.params.empty() && tc.params[0].kind == TaskParam::ArtifactRef &&
                      same_hierarchy(tc.params[0].ref_class, owner->artifact);
            if (!ok)
                throw validation_error("MissingAnchorParam", SourcePos{},
                                       "task '" + tc.name + "' must take an instance of '" +
                                           owner->artifact + "' as first parameter");
        }
        std::set<std::string> bound;
        for (const auto& p : tc.params) bound.insert(p.name);
        check_expr(*this, tc.pre, bound, false, "pre of '" + tc.name + "'");
        if (tc.result) bound.insert("result");
        check_expr(*this, tc.post, bound, true, "post of '" + tc.name + "'");
        // effect-normal-form convertibility; throws UnsupportedPostcondition.
        to_effect_normal_form(*this, tc);
    }

    // guards and conditions: anchor-scoped queries.
    for (const auto& sm : state_machines) {
        for (const auto& t : sm.transitions) {
            std::set<std::string> bound;
            if (t.source != kPreInitial) {
                const ActivityDiagram* ad = activity_for(t.event);
                if (ad) bound.insert(ad->anchor);
            }
            check_expr(*this, t.guard, bound, false, "guard on '" + t.event + "'");
        }
    }
    for (const auto& ad : activities) {
        for (const auto& e : ad.edges)
            if (e.guard)
                check_expr(*this, e.guard, {ad.anchor}, false,
                           "condition in activity '" + ad.event + "'");
    }

    for (const auto& o : constraints) check_expr(*this, o, {}, false, "constraint");
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

namespace {
bool eq(const OclPtr& a, const OclPtr& b) {
    if (!a || !b) return !a && !b;
    return ocl::equal(a, b);
}
}  // namespace

bool structurally_equal(const BaumlModel& a, const BaumlModel& b) {
    const ClassModel &ca = a.class_model, &cb = b.class_model;
    if (ca.classes.size() != cb.classes.size() || ca.associations.size() != cb.associations.size())
        return false;
    for (size_t i = 0; i < ca.classes.size(); ++i) {
        const ClassDecl &x = ca.classes[i], &y = cb.classes[i];
        if (x.name != y.name || x.super != y.super || x.is_terminal_state != y.is_terminal_state)
            return false;
        if (x.attributes.size() != y.attributes.size()) return false;
        for (size_t j = 0; j < x.attributes.size(); ++j) {
            const Attribute &p = x.attributes[j], &q = y.attributes[j];
            if (p.name != q.name || p.kind != q.kind || p.is_key != q.is_key) return false;
        }
    }
    for (size_t i = 0; i < ca.associations.size(); ++i) {
        const AssocDecl &x = ca.associations[i], &y = cb.associations[i];
        if (x.name != y.name || x.domain_class != y.domain_class || x.domain_role != y.domain_role ||
            x.image_class != y.image_class || x.image_role != y.image_role ||
            x.domain_card.lower != y.domain_card.lower || x.domain_card.upper != y.domain_card.upper ||
            x.image_card.lower != y.image_card.lower || x.image_card.upper != y.image_card.upper)
            return false;
    }
    if (ca.artifacts != cb.artifacts || ca.readonly_marks != cb.readonly_marks) return false;

    if (a.constraints.size() != b.constraints.size()) return false;
    for (size_t i = 0; i < a.constraints.size(); ++i)
        if (!eq(a.constraints[i], b.constraints[i])) return false;

    if (a.state_machines.size() != b.state_machines.size()) return false;
    for (size_t i = 0; i < a.state_machines.size(); ++i) {
        const StateMachine &x = a.state_machines[i], &y = b.state_machines[i];
        if (x.artifact != y.artifact || x.initial != y.initial || x.states != y.states ||
            x.transitions.size() != y.transitions.size())
            return false;
        for (size_t j = 0; j < x.transitions.size(); ++j) {
            const LifecycleTransition &p = x.transitions[j], &q = y.transitions[j];
            if (p.source != q.source || p.event != q.event || p.target != q.target ||
                !eq(p.guard, q.guard))
                return false;
        }
    }

    if (a.activities.size() != b.activities.size()) return false;
    for (size_t i = 0; i < a.activities.size(); ++i) {
        const ActivityDiagram &x = a.activities[i], &y = b.activities[i];
        if (x.event != y.event || x.anchor != y.anchor || x.nodes.size() != y.nodes.size() ||
            x.edges.size() != y.edges.size())
            return false;
        for (size_t j = 0; j < x.nodes.size(); ++j) {
            const ActivityNode &p = x.nodes[j], &q = y.nodes[j];
            if (p.kind != q.kind || p.id != q.id || p.task != q.task) return false;
        }
        for (size_t j = 0; j < x.edges.size(); ++j) {
            const ActivityEdge &p = x.edges[j], &q = y.edges[j];
            if (p.from != q.from || p.to != q.to || !eq(p.guard, q.guard)) return false;
        }
    }

    if (a.contracts.size() != b.contracts.size()) return false;
    for (const auto& [name, x] : a.contracts) {
        const TaskContract* y = b.contract_for(name);
        if (!y || x.result != y->result || x.params.size() != y->params.size()) return false;
        for (size_t j = 0; j < x.params.size(); ++j) {
            const TaskParam &p = x.params[j], &q = y->params[j];
            if (p.name != q.name || p.kind != q.kind || p.ref_class != q.ref_class) return false;
        }
        if (!eq(x.pre, y->pre) || !eq(x.post, y->post)) return false;
    }
    return true;
}

}  // namespace bauml
