#include "bauml/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <json.hpp>

#include "bauml/diag.hpp"
#include "bauml/enf.hpp"

namespace bauml {

namespace {

const AssocDecl* assoc_of_role(const BaumlModel& m, const std::string& role) {
    if (const AssocDecl* a = m.class_model.assoc_by_image_role(role)) return a;
    return m.class_model.assoc_by_domain_role(role);
}

bool is_role(const BaumlModel& m, const std::string& step) {
    return assoc_of_role(m, step) != nullptr;
}

// Class an expression statically denotes, when derivable. Attributes and
// booleans have no class; unknown variables resolve through `env`.
std::optional<std::string> static_class(const BaumlModel& m, const OclPtr& e,
                                        const std::map<std::string, std::string>& env) {
    switch (e->kind) {
        case OclExpr::AllInstances: return e->name;
        case OclExpr::OclAsType: return e->name;
        case OclExpr::Var: {
            auto it = env.find(e->name);
            if (it == env.end()) return std::nullopt;
            return it->second;
        }
        case OclExpr::Nav: {
            if (const AssocDecl* a = m.class_model.assoc_by_image_role(e->name))
                return a->image_class;
            if (const AssocDecl* a = m.class_model.assoc_by_domain_role(e->name))
                return a->domain_class;
            return std::nullopt;
        }
        case OclExpr::First:
        case OclExpr::AsOrderedSet:
            return static_class(m, e->kids[0], env);
        case OclExpr::Select:
            return static_class(m, e->kids[0], env);
        case OclExpr::Let: {
            auto env2 = env;
            if (auto c = static_class(m, e->kids[0], env)) env2[e->var] = *c;
            return static_class(m, e->kids[1], env2);
        }
        default: return std::nullopt;
    }
}

bool mentions_is_new_of(const OclPtr& e, const std::string& var) {
    bool found = false;
    ocl::walk(e, [&](const OclExpr& n) {
        if (n.kind == OclExpr::OclIsNew && n.kids[0]->kind == OclExpr::Var &&
            n.kids[0]->name == var)
            found = true;
        return !found;
    });
    return found;
}

// `coll->exists(v | v.oclIsNew() ...)`: an object creation, not a query.
bool is_creation_pattern(const OclPtr& e) {
    return e->kind == OclExpr::Exists && mentions_is_new_of(e->kids[1], e->var);
}

// `not (C.allInstances()->exists(v | v.key = e))`: a duplicate-key guard.
bool is_keyed_guard(const BaumlModel& m, const OclPtr& e) {
    if (e->kind != OclExpr::Not) return false;
    const OclPtr& inner = e->kids[0];
    if (inner->kind != OclExpr::Exists || inner->kids[0]->kind != OclExpr::AllInstances)
        return false;
    bool keyed = false;
    ocl::walk(inner->kids[1], [&](const OclExpr& n) {
        if (n.kind == OclExpr::Eq)
            for (const auto& side : n.kids)
                if (side->kind == OclExpr::Nav && !is_role(m, side->name) &&
                    side->kids[0]->kind == OclExpr::Var && side->kids[0]->name == inner->var)
                    keyed = true;
        return !keyed;
    });
    return keyed;
}

// Reports every free `C.allInstances()` query in `e`. Creation patterns are
// skipped when `skip_creations`; duplicate-key guards are skipped when
// `in_pre`.
void scan_free_queries(const BaumlModel& m, const OclPtr& e, bool in_pre, bool skip_creations,
                       const std::function<void(const OclExpr&)>& hit) {
    if (e->kind == OclExpr::AllInstances) {
        hit(*e);
        return;
    }
    if (skip_creations && is_creation_pattern(e) && e->kids[0]->kind == OclExpr::AllInstances) {
        scan_free_queries(m, e->kids[1], in_pre, skip_creations, hit);
        return;
    }
    if (in_pre && is_keyed_guard(m, e)) return;
    for (const auto& k : e->kids) scan_free_queries(m, k, in_pre, skip_creations, hit);
}

void walk_clauses(const std::vector<EffectClause>& clauses,
                  const std::function<void(const EffectClause&)>& visit) {
    for (const auto& cl : clauses) {
        visit(cl);
        if (!cl.body.empty()) walk_clauses(cl.body, visit);
    }
}

std::map<std::string, std::string> contract_env(const BaumlModel& m, const TaskContract& tc) {
    std::map<std::string, std::string> env;
    for (const auto& p : tc.params)
        if (p.kind == TaskParam::ArtifactRef) env[p.name] = p.ref_class;
    if (tc.result) env["result"] = *tc.result;
    (void)m;
    return env;
}

std::map<std::string, std::vector<DependencyEdge>> adjacency(const DependencyGraph& g) {
    std::map<std::string, std::vector<DependencyEdge>> adj;
    for (const auto& e : g.edges) adj[e.from].push_back(e);
    return adj;
}

bool find_cycle_from(const std::map<std::string, std::vector<DependencyEdge>>& adj,
                     const std::string& start, const std::string& cur,
                     std::set<std::string>& visited, std::vector<std::string>& path) {
    auto it = adj.find(cur);
    if (it == adj.end()) return false;
    for (const auto& e : it->second) {
        if (e.to == start) {
            path.push_back(start);
            return true;
        }
        if (!visited.insert(e.to).second) continue;
        path.push_back(e.to);
        if (find_cycle_from(adj, start, e.to, visited, path)) return true;
        path.pop_back();
    }
    return false;
}

unsigned long long longest_from(const std::map<std::string, std::vector<DependencyEdge>>& adj,
                                const std::string& cur, std::set<std::string>& on_path) {
    unsigned long long best = 0;
    auto it = adj.find(cur);
    if (it == adj.end()) return 0;
    for (const auto& e : it->second) {
        if (!on_path.insert(e.to).second) continue;
        best = std::max(best, 1 + longest_from(adj, e.to, on_path));
        on_path.erase(e.to);
    }
    return best;
}

unsigned long long ull_pow(unsigned long long base, unsigned long long exp) {
    unsigned long long out = 1;
    while (exp--) out *= base;
    return out;
}

ObjectBound compute_bound(const BaumlModel& m, const RoleClassification& roles, unsigned n,
                          unsigned b_init) {
    DependencyGraph g = dependency_graph(m, roles);
    auto adj = adjacency(g);
    unsigned long long l = 0;
    for (const auto& art : m.class_model.artifacts) {
        std::set<std::string> on_path{m.hierarchy_root(art)};
        l = std::max(l, longest_from(adj, m.hierarchy_root(art), on_path));
    }
    ObjectBound b;
    b.k = m.class_model.associations.size();
    b.n = std::max(1u, n);
    b.l = l;
    b.per_instance = b.k == 0 ? 0 : ull_pow(b.k * b.n, l + 1);
    b.system_bound = (b_init + 1ull) * std::max(b.per_instance, 1ull);
    b.b_init = b_init;
    return b;
}

}  // namespace

RwPartition derive_rw_partition(const BaumlModel& m) {
    std::set<std::string> rw_roots;
    std::set<std::string> rw_assocs;
    auto mark_class = [&](const std::string& cls) { rw_roots.insert(m.hierarchy_root(cls)); };
    auto mark_role = [&](const std::string& role) {
        if (const AssocDecl* a = assoc_of_role(m, role)) rw_assocs.insert(a->name);
    };
    for (const auto& art : m.class_model.artifacts) mark_class(art);

    for (const auto& [name, tc] : m.contracts) {
        (void)name;
        EffectNormalForm enf = to_effect_normal_form(m, tc);
        std::map<std::string, std::string> env = contract_env(m, tc);
        std::function<void(const std::vector<EffectClause>&)> go =
            [&](const std::vector<EffectClause>& clauses) {
                for (const auto& cl : clauses) {
                    switch (cl.kind) {
                        case EffectClause::Bind:
                            if (!cl.var.empty() && cl.target)
                                if (auto c = static_class(m, cl.target, env)) env[cl.var] = *c;
                            break;
                        case EffectClause::Create:
                            mark_class(cl.cls);
                            env[cl.var] = cl.cls;
                            for (const auto& alias : cl.aliases) env[alias] = cl.cls;
                            if (!cl.role.empty()) mark_role(cl.role);
                            for (const auto& [step, v] : cl.sets) {
                                (void)v;
                                if (is_role(m, step)) mark_role(step);
                            }
                            break;
                        case EffectClause::Retype:
                            mark_class(cl.cls);
                            break;
                        case EffectClause::DeleteKeyed:
                            if (auto c = static_class(m, cl.target, env)) mark_class(*c);
                            break;
                        case EffectClause::SetAttr:
                            if (auto c = static_class(m, cl.target, env)) mark_class(*c);
                            break;
                        case EffectClause::SetLink:
                        case EffectClause::ClearLink:
                        case EffectClause::IncludeLink:
                        case EffectClause::IncludeKeyed:
                            mark_role(cl.role);
                            break;
                        case EffectClause::ForAllEach: {
                            auto saved = env;
                            if (auto c = static_class(m, cl.target, env)) env[cl.var] = *c;
                            go(cl.body);
                            env = saved;
                            break;
                        }
                    }
                }
            };
        go(enf.clauses);
    }

    RwPartition out;
    for (const auto& c : m.class_model.classes)
        (rw_roots.count(m.hierarchy_root(c.name)) ? out.read_write : out.read_only).insert(c.name);
    for (const auto& a : m.class_model.associations)
        (rw_assocs.count(a.name) ? out.read_write : out.read_only).insert(a.name);
    return out;
}

RoleClassification classify_roles(const BaumlModel& m) {
    RoleClassification out;
    auto scan = [&](const OclPtr& e) {
        if (!e) return;
        ocl::walk(e, [&](const OclExpr& n) {
            if (n.kind == OclExpr::Nav && is_role(m, n.name)) out.target_roles.insert(n.name);
            return true;
        });
    };
    for (const auto& [name, tc] : m.contracts) {
        (void)name;
        scan(tc.pre);
        scan(tc.post);
    }
    for (const auto& sm : m.state_machines)
        for (const auto& t : sm.transitions) scan(t.guard);
    for (const auto& ad : m.activities)
        for (const auto& e : ad.edges) scan(e.guard);
    for (const auto& o : m.constraints) scan(o);

    for (const auto& a : m.class_model.associations) {
        if (!out.target_roles.count(a.image_role)) out.source_roles.insert(a.image_role);
        if (!out.target_roles.count(a.domain_role)) out.source_roles.insert(a.domain_role);
    }
    return out;
}

DependencyGraph dependency_graph(const BaumlModel& m, const RoleClassification& roles) {
    DependencyGraph g;
    for (const auto& c : m.class_model.classes) g.nodes.insert(m.hierarchy_root(c.name));
    for (const auto& a : m.class_model.associations) {
        if (roles.is_target(a.image_role))
            g.edges.push_back({m.hierarchy_root(a.domain_class), m.hierarchy_root(a.image_class),
                               a.image_role});
        if (roles.is_target(a.domain_role))
            g.edges.push_back({m.hierarchy_root(a.image_class), m.hierarchy_root(a.domain_class),
                               a.domain_role});
    }
    return g;
}

DirectionalityResult directionality(const BaumlModel& m, const RoleClassification& roles,
                                    const RwPartition& partition) {
    DependencyGraph g = dependency_graph(m, roles);
    auto adj = adjacency(g);
    std::set<std::string> rw_roots;
    for (const auto& c : m.class_model.classes)
        if (partition.is_read_write(c.name)) rw_roots.insert(m.hierarchy_root(c.name));

    DirectionalityResult out;
    for (const auto& root : rw_roots) {
        std::set<std::string> visited{root};
        std::vector<std::string> path{root};
        if (find_cycle_from(adj, root, root, visited, path)) {
            out.kind = Directionality::Bidirectional;
            out.cycle = path;
            return out;
        }
    }
    return out;
}

CardinalityResult cardinality_check(const BaumlModel& m, const RoleClassification& roles) {
    CardinalityResult out;
    unsigned max_upper = 1;
    for (const auto& a : m.class_model.associations) {
        if (roles.is_target(a.image_role)) {
            if (!a.image_card.bounded()) {
                out.bounded = false;
                out.unbounded_role = a.image_role;
                return out;
            }
            max_upper = std::max(max_upper, a.image_card.upper);
        }
        if (roles.is_target(a.domain_role)) {
            if (!a.domain_card.bounded()) {
                out.bounded = false;
                out.unbounded_role = a.domain_role;
                return out;
            }
            max_upper = std::max(max_upper, a.domain_card.upper);
        }
    }
    out.max_upper = max_upper;
    return out;
}

NavigationalResult navigational_check(const BaumlModel& m, const RwPartition& partition) {
    NavigationalResult out;
    auto flag = [&](const std::string& where, const std::string& cls) {
        if (!partition.is_read_write(cls)) return;
        out.navigational = false;
        out.witnesses.push_back(where + ": " + cls + ".allInstances()");
    };
    // Free reads over read-write classes are the shared-instance relaxation,
    // classified by shared_instance_check. A contract clause breaks
    // navigability only when a free query creates or deletes objects.
    std::function<void(const std::string&, const OclPtr&, bool)> scan_contract =
        [&](const std::string& where, const OclPtr& e, bool in_pre) {
            if (!e) return;
            if (is_creation_pattern(e) && e->kids[0]->kind == OclExpr::AllInstances)
                flag(where, e->kids[0]->name);
            if (!in_pre && e->kind == OclExpr::Not) {
                const OclPtr& inner = e->kids[0];
                if (inner->kind == OclExpr::Exists &&
                    inner->kids[0]->kind == OclExpr::AllInstances &&
                    !is_creation_pattern(inner))
                    flag(where, inner->kids[0]->name);
            }
            for (const auto& k : e->kids) scan_contract(where, k, in_pre);
        };
    // Conditions must be navigational from their anchor outright; only the
    // creation event's guards share the init exemption.
    auto scan_guard = [&](const std::string& where, const OclPtr& e) {
        if (!e) return;
        scan_free_queries(m, e, false, false,
                          [&](const OclExpr& n) { flag(where, n.name); });
    };
    for (const auto& [name, tc] : m.contracts) {
        if (m.is_init_task(name)) continue;
        scan_contract("pre of '" + name + "'", tc.pre, true);
        scan_contract("post of '" + name + "'", tc.post, false);
    }
    for (const auto& sm : m.state_machines)
        for (const auto& t : sm.transitions) {
            if (m.is_init_event(t.event)) continue;
            scan_guard("guard on '" + t.event + "'", t.guard);
        }
    for (const auto& ad : m.activities) {
        if (m.is_init_event(ad.event)) continue;
        for (const auto& e : ad.edges)
            scan_guard("edge guard in '" + ad.event + "'", e.guard);
    }
    return out;
}

SharedResult shared_instance_check(const BaumlModel& m, const RwPartition& partition) {
    SharedResult out;
    auto touch = [&](const std::string& cls, const std::string& witness) {
        if (partition.is_read_write(cls)) {
            if (out.kind != SharedInstances::ReadWrite) {
                out.kind = SharedInstances::ReadWrite;
                out.witness = witness;
            }
        } else {
            if (out.kind == SharedInstances::None) out.kind = SharedInstances::ReadOnlyOnly;
            out.shared_classes.insert(cls);
        }
    };
    for (const auto& [name, tc] : m.contracts) {
        auto scan = [&](const std::string& where, const OclPtr& e, bool in_pre) {
            scan_free_queries(m, e, in_pre, true, [&](const OclExpr& n) {
                touch(n.name, where + ": " + n.name + ".allInstances()");
            });
        };
        scan("pre of '" + name + "'", tc.pre, true);
        scan("post of '" + name + "'", tc.post, false);

        // Keyed link additions look objects up across the whole population.
        EffectNormalForm enf = to_effect_normal_form(m, tc);
        walk_clauses(enf.clauses, [&](const EffectClause& cl) {
            if (cl.kind != EffectClause::IncludeKeyed) return;
            const AssocDecl* a = assoc_of_role(m, cl.role);
            if (!a) return;
            std::string other = a->image_role == cl.role ? a->image_class : a->domain_class;
            touch(other, "post of '" + name + "': keyed lookup into " + other);
        });
    }
    auto scan_guard = [&](const std::string& where, const OclPtr& e) {
        if (!e) return;
        scan_free_queries(m, e, true, true, [&](const OclExpr& n) {
            touch(n.name, where + ": " + n.name + ".allInstances()");
        });
    };
    for (const auto& sm : m.state_machines)
        for (const auto& t : sm.transitions) scan_guard("guard on '" + t.event + "'", t.guard);
    for (const auto& ad : m.activities)
        for (const auto& e : ad.edges) scan_guard("edge guard in '" + ad.event + "'", e.guard);
    return out;
}

Verdict decide_verdict(bool navigational, bool unidirectional, bool bounded,
                       SharedInstances shared, bool instance_bounded) {
    if (!navigational) return Verdict::UndecidableThm1;
    if (!unidirectional) return Verdict::UndecidableThm4;
    if (!bounded) return Verdict::UndecidableThm2;
    if (shared == SharedInstances::ReadWrite)
        return instance_bounded ? Verdict::DecidableThm6IfInstanceBounded
                                : Verdict::UndecidableThm5UnlessBounded;
    return Verdict::DecidableThm3;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::DecidableThm3: return "DECIDABLE_THM3";
        case Verdict::DecidableThm6IfInstanceBounded: return "DECIDABLE_THM6_IF_INSTANCE_BOUNDED";
        case Verdict::UndecidableThm1: return "UNDECIDABLE_THM1";
        case Verdict::UndecidableThm2: return "UNDECIDABLE_THM2";
        case Verdict::UndecidableThm4: return "UNDECIDABLE_THM4";
        case Verdict::UndecidableThm5UnlessBounded: return "UNDECIDABLE_THM5_UNLESS_BOUNDED";
    }
    return "UNKNOWN";
}

std::string verdict_citation(Verdict v) {
    switch (v) {
        case Verdict::DecidableThm3:
            return "Theorem 3: termination checking is decidable for navigational, "
                   "unidirectional, cardinality-bounded models whose shared instances "
                   "are read-only.";
        case Verdict::DecidableThm6IfInstanceBounded:
            return "Theorem 6: checking is decidable because the number of simultaneously "
                   "active artifact instances is bounded.";
        case Verdict::UndecidableThm1:
            return "Theorem 1: checking is undecidable for unrestricted models that create "
                   "or delete objects outside the reach of an artifact instance.";
        case Verdict::UndecidableThm2:
            return "Theorem 2: checking is undecidable when a target role has an unbounded "
                   "cardinality.";
        case Verdict::UndecidableThm4:
            return "Theorem 4: checking is undecidable for bidirectional models.";
        case Verdict::UndecidableThm5UnlessBounded:
            return "Theorem 5: checking is undecidable with read-write shared instances, "
                   "unless the number of active instances is bounded (Theorem 6).";
    }
    return "";
}

ObjectBound object_bound(const BaumlModel& m, unsigned n, unsigned b_init) {
    RwPartition partition = derive_rw_partition(m);
    RoleClassification roles = classify_roles(m);
    if (!navigational_check(m, partition).navigational)
        throw Error("PreconditionViolated", "object bound requires a navigational model");
    if (directionality(m, roles, partition).kind != Directionality::Unidirectional)
        throw Error("PreconditionViolated", "object bound requires a unidirectional model");
    if (!cardinality_check(m, roles).bounded)
        throw Error("PreconditionViolated", "object bound requires bounded target roles");
    return compute_bound(m, roles, n, b_init);
}

AnalysisReport analyze(const BaumlModel& m, const AnalysisOptions& options) {
    AnalysisReport r;
    r.partition = derive_rw_partition(m);
    r.roles = classify_roles(m);
    r.navigational = navigational_check(m, r.partition);
    r.directionality = directionality(m, r.roles, r.partition);
    r.cardinality = cardinality_check(m, r.roles);
    r.shared_instances = shared_instance_check(m, r.partition);
    r.verdict = decide_verdict(r.navigational.navigational,
                               r.directionality.kind == Directionality::Unidirectional,
                               r.cardinality.bounded, r.shared_instances.kind,
                               options.instance_bound.has_value());
    r.citation = verdict_citation(r.verdict);
    if (r.navigational.navigational &&
        r.directionality.kind == Directionality::Unidirectional && r.cardinality.bounded) {
        ObjectBound b = compute_bound(m, r.roles, r.cardinality.max_upper, options.b_init);
        if (r.verdict == Verdict::DecidableThm6IfInstanceBounded)
            b.system_bound =
                std::max<unsigned long long>(*options.instance_bound, 1) *
                std::max<unsigned long long>(b.per_instance, 1);
        r.bound = b;
    }
    return r;
}

std::string report_to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["partition"]["read_only"] = r.partition.read_only;
    j["partition"]["read_write"] = r.partition.read_write;
    j["roles"]["target_roles"] = r.roles.target_roles;
    j["roles"]["source_roles"] = r.roles.source_roles;
    j["navigational"]["flag"] = r.navigational.navigational;
    j["navigational"]["witnesses"] = r.navigational.witnesses;
    j["directionality"]["kind"] = r.directionality.kind == Directionality::Unidirectional
                                      ? "UNIDIRECTIONAL"
                                      : "BIDIRECTIONAL";
    j["directionality"]["cycle"] = r.directionality.cycle;
    if (r.cardinality.bounded) {
        j["cardinality"]["kind"] = "BOUNDED";
        j["cardinality"]["n"] = r.cardinality.max_upper;
    } else {
        j["cardinality"]["kind"] = "UNBOUNDED";
        j["cardinality"]["role"] = r.cardinality.unbounded_role;
    }
    switch (r.shared_instances.kind) {
        case SharedInstances::None: j["shared_instances"]["kind"] = "NONE"; break;
        case SharedInstances::ReadOnlyOnly:
            j["shared_instances"]["kind"] = "READ_ONLY_ONLY";
            break;
        case SharedInstances::ReadWrite: j["shared_instances"]["kind"] = "READ_WRITE"; break;
    }
    j["shared_instances"]["witness"] = r.shared_instances.witness;
    j["shared_instances"]["classes"] = r.shared_instances.shared_classes;
    j["verdict"]["name"] = verdict_name(r.verdict);
    j["verdict"]["citation"] = r.citation;
    if (r.bound) {
        j["bound"]["k"] = r.bound->k;
        j["bound"]["n"] = r.bound->n;
        j["bound"]["l"] = r.bound->l;
        j["bound"]["per_instance"] = r.bound->per_instance;
        j["bound"]["system"] = r.bound->system_bound;
        j["bound"]["b_init"] = r.bound->b_init;
    }
    return j.dump(2);
}

}  // namespace bauml
