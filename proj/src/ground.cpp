#include "bauml/ground.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "bauml/diag.hpp"
#include "bauml/enf.hpp"

namespace bauml {

bool Process::operator==(const Process& o) const {
    return anchor == o.anchor && event == o.event && node == o.node &&
           source_state == o.source_state && target_state == o.target_state;
}

bool Process::operator<(const Process& o) const {
    return std::tie(anchor, event, node, source_state, target_state) <
           std::tie(o.anchor, o.event, o.node, o.source_state, o.target_state);
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

namespace {

struct CanonicalForm {
    std::string key;
    std::map<Oid, size_t> rank;
};

CanonicalForm canonical_form(const BaumlModel& m, const Configuration& c,
                             const std::set<std::string>& fresh_values) {
    (void)m;
    // color refinement: class + attributes (fresh values masked) + process
    // positions, then repeated aggregation of neighbor colors
    std::map<Oid, std::string> color;
    for (const auto& [oid, obj] : c.snap.objects) {
        std::string s = obj.cls;
        for (const auto& [a, v] : obj.attrs) {
            s += "|" + a + "=";
            if (v.kind == AttrValue::Str)
                s += fresh_values.count(v.s) ? std::string("~") : "s:" + v.s;
            else
                s += v.b ? "T" : "F";
        }
        color[oid] = s;
    }
    for (const auto& p : c.processes)
        if (p.anchor) color[p.anchor] += "|P:" + p.event + ":" + p.node;

    auto partitions = [&]() {
        std::set<std::string> d;
        for (const auto& [oid, s] : color) d.insert(s);
        return d.size();
    };
    size_t parts = partitions();
    for (size_t round = 0; round < c.snap.objects.size(); ++round) {
        std::map<Oid, std::vector<std::string>> agg;
        for (const auto& [assoc, d, i] : c.snap.links) {
            agg[d].push_back(">" + assoc + ":" + color[i]);
            agg[i].push_back("<" + assoc + ":" + color[d]);
        }
        std::map<Oid, std::string> next = color;
        for (auto& [oid, parts_vec] : agg) {
            std::sort(parts_vec.begin(), parts_vec.end());
            for (const auto& s : parts_vec) next[oid] += "|" + s;
        }
        color = std::move(next);
        size_t now = partitions();
        if (now == parts) break;
        parts = now;
    }

    std::vector<Oid> order;
    for (const auto& [oid, obj] : c.snap.objects) order.push_back(oid);
    std::sort(order.begin(), order.end(), [&](Oid a, Oid b) {
        if (color[a] != color[b]) return color[a] < color[b];
        return a < b;
    });
    std::map<Oid, size_t> rank;
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    std::map<std::string, std::string> fresh_rename;
    auto fresh_name = [&](const std::string& v) -> std::string {
        if (!fresh_values.count(v)) return "s:" + v;
        auto it = fresh_rename.find(v);
        if (it == fresh_rename.end())
            it = fresh_rename.emplace(v, "~f" + std::to_string(fresh_rename.size())).first;
        return it->second;
    };

    std::string key;
    for (Oid oid : order) {
        const Object& obj = c.snap.objects.at(oid);
        key += std::to_string(rank[oid]) + ":" + obj.cls + "{";
        for (const auto& [a, v] : obj.attrs) {
            key += a + "=";
            key += v.kind == AttrValue::Str ? fresh_name(v.s) : (v.b ? "T" : "F");
            key += ",";
        }
        key += "};";
    }
    std::vector<std::string> link_strs;
    for (const auto& [assoc, d, i] : c.snap.links)
        link_strs.push_back(assoc + "(" + std::to_string(rank[d]) + "," +
                            std::to_string(rank[i]) + ")");
    std::sort(link_strs.begin(), link_strs.end());
    for (const auto& s : link_strs) key += s + ";";

    std::vector<std::string> proc_strs;
    for (const auto& p : c.processes)
        proc_strs.push_back("p(" + (p.anchor ? std::to_string(rank[p.anchor]) : "-") + "," +
                            p.event + "," + p.node + "," + p.source_state + "," +
                            p.target_state + ")");
    std::sort(proc_strs.begin(), proc_strs.end());
    for (const auto& s : proc_strs) key += s + ";";

    key += "fresh=" + std::to_string(c.fresh_used) + ";";
    for (const auto& [art, left] : c.slots)
        key += "slot:" + art + "=" + std::to_string(left) + ";";
    return {std::move(key), std::move(rank)};
}

}  // namespace

std::string canonical_key(const BaumlModel& m, const Configuration& c,
                          const std::set<std::string>& fresh_values) {
    return canonical_form(m, c, fresh_values).key;
}

Oid TransitionSystem::step_oid(size_t s, size_t k, Oid o) const {
    if (edge_map.empty()) return o;
    const std::map<Oid, Oid>& em = edge_map[s][k];
    auto it = em.find(o);
    return it == em.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Initial database
// ---------------------------------------------------------------------------

Snapshot parse_initial_db(const BaumlModel& m, const std::string& text) {
    Snapshot s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        SourcePos pos{lineno, 1};
        if (word == "object") {
            Oid oid = 0;
            char colon = 0;
            std::string cls;
            if (!(ls >> oid >> colon >> cls) || colon != ':' || oid == 0)
                throw syntax_error(pos, "expected `object <n> : <Class>`");
            if (!m.class_model.find_class(cls))
                throw syntax_error(pos, "unknown class '" + cls + "'");
            if (s.has(oid)) throw syntax_error(pos, "duplicate object " + std::to_string(oid));
            Object obj;
            obj.id = oid;
            obj.cls = cls;
            s.objects.emplace(oid, obj);
            s.next_oid = std::max(s.next_oid, oid + 1);
        } else if (word == "attr") {
            std::string lhs, eq, rhs;
            if (!(ls >> lhs >> eq) || eq != "=") throw syntax_error(pos, "expected `attr <n>.<a> = <v>`");
            std::getline(ls, rhs);
            size_t dot = lhs.find('.');
            if (dot == std::string::npos) throw syntax_error(pos, "expected `<n>.<attribute>`");
            Oid oid = static_cast<Oid>(std::stoul(lhs.substr(0, dot)));
            std::string attr = lhs.substr(dot + 1);
            if (!s.has(oid)) throw syntax_error(pos, "unknown object in attr line");
            size_t b = rhs.find_first_not_of(" \t");
            size_t e = rhs.find_last_not_of(" \t");
            if (b == std::string::npos) throw syntax_error(pos, "missing attribute value");
            rhs = rhs.substr(b, e - b + 1);
            Object& obj = s.objects.at(oid);
            bool known = false;
            for (const Attribute& a : m.all_attributes(obj.cls))
                if (a.name == attr) {
                    known = true;
                    if (a.kind == Attribute::Boolean) {
                        if (rhs != "true" && rhs != "false")
                            throw syntax_error(pos, "boolean attribute needs true/false");
                        obj.attrs[attr] = AttrValue::boolean(rhs == "true");
                    } else {
                        if (rhs.size() < 2 || rhs.front() != '"' || rhs.back() != '"')
                            throw syntax_error(pos, "string attribute needs a quoted value");
                        obj.attrs[attr] = AttrValue::str(rhs.substr(1, rhs.size() - 2));
                    }
                }
            if (!known)
                throw syntax_error(pos, "class '" + obj.cls + "' has no attribute '" + attr + "'");
        } else if (word == "link") {
            std::string assoc;
            Oid d = 0, i = 0;
            if (!(ls >> assoc >> d >> i)) throw syntax_error(pos, "expected `link <assoc> <dom> <img>`");
            const AssocDecl* a = m.class_model.find_assoc(assoc);
            if (!a) throw syntax_error(pos, "unknown association '" + assoc + "'");
            if (!s.has(d) || !s.has(i)) throw syntax_error(pos, "link endpoint not declared");
            if (!m.is_subclass(s.objects.at(d).cls, a->domain_class) ||
                !m.is_subclass(s.objects.at(i).cls, a->image_class))
                throw syntax_error(pos, "link endpoints do not match '" + assoc + "'");
            s.links.insert({assoc, d, i});
        } else {
            throw syntax_error(pos, "unknown directive '" + word + "'");
        }
    }
    return s;
}

Snapshot parse_initial_db_file(const BaumlModel& m, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_initial_db(m, buf.str());
}

// ---------------------------------------------------------------------------
// Grounding
// ---------------------------------------------------------------------------

namespace {

// Upper cardinalities and key uniqueness; lower bounds stay unenforced so
// partially built structures remain executable.
bool snapshot_admissible(const BaumlModel& m, const Snapshot& s) {
    std::map<std::pair<std::string, Oid>, unsigned> img_count, dom_count;
    for (const auto& [assoc, d, i] : s.links) {
        ++img_count[{assoc, d}];
        ++dom_count[{assoc, i}];
    }
    for (const AssocDecl& a : m.class_model.associations) {
        if (a.image_card.bounded())
            for (const auto& [key, n] : img_count)
                if (key.first == a.name && n > a.image_card.upper) return false;
        if (a.domain_card.bounded())
            for (const auto& [key, n] : dom_count)
                if (key.first == a.name && n > a.domain_card.upper) return false;
    }
    std::set<std::string> roots;
    for (const ClassDecl& c : m.class_model.classes) roots.insert(m.hierarchy_root(c.name));
    for (const std::string& root : roots) {
        std::optional<std::string> key = m.key_attribute(root);
        if (!key) continue;
        std::set<AttrValue> seen;
        for (Oid o : s.instances_of(m, root)) {
            auto at = s.objects.at(o).attrs.find(*key);
            if (at == s.objects.at(o).attrs.end()) continue;
            if (!seen.insert(at->second).second) return false;
        }
    }
    return true;
}

struct Builder {
    const BaumlModel& m;
    const GroundOptions& opts;
    std::vector<std::string> pool;
    std::set<std::string> pool_set;
    std::map<std::string, EffectNormalForm> enf_cache;
    TransitionSystem ts;
    std::vector<std::map<Oid, size_t>> ranks;  // canonical rank of each stored state
    std::unordered_map<std::string, size_t> index;
    std::deque<size_t> frontier;

    static constexpr const char* kProbe = "\x01probe";

    explicit Builder(const BaumlModel& model, const GroundOptions& o) : m(model), opts(o) {
        pool = o.fresh_pool;
        if (pool.empty())
            for (int i = 1; i <= o.fresh_budget; ++i) pool.push_back("f" + std::to_string(i));
        pool_set.insert(pool.begin(), pool.end());
        for (const auto& [name, tc] : m.contracts)
            enf_cache.emplace(name, to_effect_normal_form(m, tc));
    }

    const EffectNormalForm& enf_of(const std::string& task) { return enf_cache.at(task); }

    Env anchor_env(const ActivityDiagram& ad, Oid anchor) const {
        Env env;
        if (anchor) env[ad.anchor] = OclValue::object(anchor);
        return env;
    }

    bool guard_true(const Snapshot& snap, const OclPtr& g, const Env& env) const {
        if (!g) return true;
        EvalContext ctx{m, snap, nullptr, nullptr, {}};
        try {
            return eval_bool(ctx, g, env);
        } catch (const Error&) {
            return false;
        }
    }

    // Returns the state id plus the oid isomorphism from `c` onto the stored
    // representative (both sides' canonical rank orders yield identical
    // renamed structures, so composing them is structure-preserving).
    std::pair<size_t, std::map<Oid, Oid>> intern(Configuration&& c) {
        if (opts.object_bound && c.snap.objects.size() > *opts.object_bound)
            throw Error("BoundViolation",
                        "reachable snapshot holds " + std::to_string(c.snap.objects.size()) +
                            " objects, over the bound " + std::to_string(*opts.object_bound));
        CanonicalForm cf = canonical_form(m, c, pool_set);
        auto it = index.find(cf.key);
        if (it != index.end()) {
            size_t id = it->second;
            std::vector<Oid> inv(ranks[id].size(), 0);
            for (const auto& [o, r] : ranks[id]) inv[r] = o;
            std::map<Oid, Oid> iso;
            for (const auto& [o, r] : cf.rank) iso[o] = inv[r];
            return {id, std::move(iso)};
        }
        if (ts.states.size() >= opts.max_states)
            throw Error("StateLimit",
                        "state space exceeds " + std::to_string(opts.max_states) + " states");
        size_t id = ts.states.size();
        std::map<Oid, Oid> identity;
        for (const auto& [o, obj] : c.snap.objects) identity[o] = o;
        ts.states.push_back(std::move(c));
        ts.succ.emplace_back();
        ts.edge_map.emplace_back();
        ranks.push_back(std::move(cf.rank));
        index.emplace(std::move(cf.key), id);
        frontier.push_back(id);
        return {id, std::move(identity)};
    }

    // ---- successor generation -------------------------------------------

    void spawn_lifecycle(const Configuration& c, std::vector<Configuration>& out) {
        for (const auto& [oid, obj] : c.snap.objects) {
            if (!m.class_model.artifacts.count(m.hierarchy_root(obj.cls))) continue;
            bool busy = false;
            for (const Process& p : c.processes)
                if (p.anchor == oid) busy = true;
            if (busy) continue;
            const StateMachine* sm = m.machine_for(m.parentart(obj.cls));
            if (!sm) continue;
            for (const LifecycleTransition& t : sm->transitions) {
                if (t.source != obj.cls) continue;
                const ActivityDiagram* ad = m.activity_for(t.event);
                if (!ad) continue;
                if (!guard_true(c.snap, t.guard, anchor_env(*ad, oid))) continue;
                Configuration next = c;
                Process p;
                p.anchor = oid;
                p.event = t.event;
                p.node = initial_node(*ad);
                p.source_state = t.source;
                p.target_state = t.target;
                next.processes.push_back(p);
                out.push_back(std::move(next));
            }
        }
    }

    void spawn_creation(const Configuration& c, std::vector<Configuration>& out) {
        // one creation activity in flight at a time: its guards inspect the
        // global snapshot and must not race another creation
        for (const Process& p : c.processes)
            if (p.source_state == kPreInitial) return;
        for (const StateMachine& sm : m.state_machines) {
            for (const LifecycleTransition& t : sm.transitions) {
                if (t.source != kPreInitial) continue;
                std::string slot_key = opts.mode == GroundOptions::Thm6 ? "*" : sm.artifact;
                auto it = c.slots.find(slot_key);
                if (it == c.slots.end() || it->second <= 0) continue;
                const ActivityDiagram* ad = m.activity_for(t.event);
                if (!ad) continue;
                if (!guard_true(c.snap, t.guard, {})) continue;
                Configuration next = c;
                --next.slots[slot_key];
                Process p;
                p.anchor = 0;
                p.event = t.event;
                p.node = initial_node(*ad);
                p.source_state = kPreInitial;
                p.target_state = t.target;
                next.processes.push_back(p);
                out.push_back(std::move(next));
            }
        }
    }

    static std::string initial_node(const ActivityDiagram& ad) {
        for (const ActivityNode& n : ad.nodes)
            if (n.kind == ActivityNode::Initial) return n.id;
        return {};
    }

    void advance(const Configuration& c, size_t pi, std::vector<Configuration>& out) {
        const Process& p = c.processes[pi];
        const ActivityDiagram& ad = *m.activity_for(p.event);
        const ActivityNode& node = *ad.find_node(p.node);
        switch (node.kind) {
            case ActivityNode::Initial:
            case ActivityNode::Merge: {
                Configuration next = c;
                next.processes[pi].node = ad.out_edges(p.node)[0]->to;
                out.push_back(std::move(next));
                break;
            }
            case ActivityNode::Decision: {
                Env env = anchor_env(ad, p.anchor);
                for (const ActivityEdge* e : ad.out_edges(p.node)) {
                    if (!guard_true(c.snap, e->guard, env)) continue;
                    Configuration next = c;
                    next.processes[pi].node = e->to;
                    out.push_back(std::move(next));
                }
                break;
            }
            case ActivityNode::Task:
                run_task(c, pi, node, out);
                break;
            case ActivityNode::Final:
                retire(c, pi, out);
                break;
        }
    }

    void run_task(const Configuration& c, size_t pi, const ActivityNode& node,
                  std::vector<Configuration>& out) {
        const Process& p = c.processes[pi];
        const ActivityDiagram& ad = *m.activity_for(p.event);
        const TaskContract& tc = *m.contract_for(node.task);
        std::string next_node = ad.out_edges(p.node)[0]->to;

        bool have_fresh = c.fresh_used < static_cast<int>(pool.size());
        std::string fresh = have_fresh ? pool[c.fresh_used] : std::string(kProbe);
        std::vector<std::string> strings;
        for (const std::string& s : c.snap.active_strings()) strings.push_back(s);

        Env env;
        std::function<void(size_t, bool)> bind = [&](size_t i, bool used_fresh) {
            if (i == tc.params.size()) {
                apply_binding(c, pi, tc, env, used_fresh, next_node, out);
                return;
            }
            const TaskParam& param = tc.params[i];
            auto with = [&](OclValue v, bool uf) {
                env[param.name] = std::move(v);
                bind(i + 1, used_fresh || uf);
                env.erase(param.name);
            };
            switch (param.kind) {
                case TaskParam::ArtifactRef:
                    if (p.anchor &&
                        m.is_subclass(c.snap.objects.at(p.anchor).cls, param.ref_class))
                        with(OclValue::object(p.anchor), false);
                    break;
                case TaskParam::Boolean:
                    with(OclValue::boolean(false), false);
                    with(OclValue::boolean(true), false);
                    break;
                case TaskParam::String:
                    for (const std::string& s : strings) with(OclValue::str(s), false);
                    with(OclValue::str(fresh), true);
                    break;
            }
        };
        bind(0, false);
    }

    void apply_binding(const Configuration& c, size_t pi, const TaskContract& tc, const Env& env,
                       bool used_fresh, const std::string& next_node,
                       std::vector<Configuration>& out) {
        EvalContext ctx{m, c.snap, nullptr, nullptr, {}};
        try {
            if (!eval_bool(ctx, tc.pre, env)) return;
        } catch (const Error&) {
            return;
        }
        std::vector<EffectOutcome> outcomes;
        try {
            outcomes = apply_effects(m, enf_of(tc.name), c.snap, env);
        } catch (const Error& e) {
            if (e.kind() == "EvalError") return;
            throw;
        }
        for (EffectOutcome& o : outcomes) {
            if (!snapshot_admissible(m, o.snap)) continue;
            if (used_fresh && c.fresh_used >= static_cast<int>(pool.size()))
                throw Error("BudgetExceeded",
                            "task '" + tc.name + "' needs a fresh value beyond the budget of " +
                                std::to_string(pool.size()));
            Configuration next = c;
            next.snap = std::move(o.snap);
            if (used_fresh) ++next.fresh_used;
            Process& np = next.processes[pi];
            np.node = next_node;
            if (np.anchor == 0 && tc.result) {
                auto it = o.env.find("result");
                if (it != o.env.end() && it->second.kind == OclValue::Obj)
                    np.anchor = it->second.oid;
            }
            out.push_back(std::move(next));
        }
    }

    void retire(const Configuration& c, size_t pi, std::vector<Configuration>& out) {
        const Process& p = c.processes[pi];
        if (p.anchor == 0 || !c.snap.has(p.anchor))
            throw Error("InconsistentRetyping",
                        "activity '" + p.event + "' retired without a live instance");
        Configuration next = c;
        Object& obj = next.snap.objects.at(p.anchor);
        if (obj.cls != p.target_state) {
            if (obj.cls == p.source_state) {
                obj.cls = p.target_state;  // the lifecycle move itself
            } else {
                throw Error("InconsistentRetyping",
                            "activity '" + p.event + "' left instance in '" + obj.cls +
                                "', transition targets '" + p.target_state + "'");
            }
        }
        next.processes.erase(next.processes.begin() + static_cast<long>(pi));
        out.push_back(std::move(next));
    }

    TransitionSystem build() {
        ts.model = m;
        Configuration init;
        init.snap = opts.initial_db;
        if (opts.mode == GroundOptions::Thm6) {
            init.slots["*"] = opts.instance_bound;
        } else {
            for (const std::string& art : m.class_model.artifacts) init.slots[art] = 1;
        }
        ts.initial = intern(std::move(init)).first;
        while (!frontier.empty()) {
            size_t id = frontier.front();
            frontier.pop_front();
            std::vector<Configuration> next;
            Configuration c = ts.states[id];  // copy: intern may grow the vector
            spawn_lifecycle(c, next);
            spawn_creation(c, next);
            for (size_t pi = 0; pi < c.processes.size(); ++pi) advance(c, pi, next);
            std::set<std::pair<size_t, std::map<Oid, Oid>>> succs;
            for (Configuration& n : next) {
                auto [t, iso] = intern(std::move(n));
                // keep the survivors only; fresh objects have no source oid
                for (auto it = iso.begin(); it != iso.end();)
                    it = c.snap.has(it->first) ? std::next(it) : iso.erase(it);
                succs.insert({t, std::move(iso)});
            }
            for (auto& [t, iso] : succs) {
                ts.succ[id].push_back(t);
                ts.edge_map[id].push_back(iso);
            }
        }
        ts.deadlock.assign(ts.states.size(), false);
        for (size_t i = 0; i < ts.states.size(); ++i)
            if (ts.succ[i].empty()) {
                ts.succ[i].push_back(i);
                std::map<Oid, Oid> identity;
                for (const auto& [o, obj] : ts.states[i].snap.objects) identity[o] = o;
                ts.edge_map[i].push_back(std::move(identity));
                ts.deadlock[i] = true;
            }
        return std::move(ts);
    }
};

}  // namespace

TransitionSystem ground(const BaumlModel& m, const GroundOptions& opts) {
    Builder b(m, opts);
    return b.build();
}

size_t state_count(const TransitionSystem& ts) { return ts.states.size(); }

std::map<std::string, std::set<Oid>> class_extensions(const BaumlModel& m, const Snapshot& s) {
    std::map<std::string, std::set<Oid>> out;
    for (const ClassDecl& c : m.class_model.classes) {
        std::vector<Oid> v = s.instances_of(m, c.name);
        out[c.name] = std::set<Oid>(v.begin(), v.end());
    }
    return out;
}

std::vector<std::map<std::string, std::set<Oid>>> reachable_classes(const TransitionSystem& ts) {
    std::vector<std::map<std::string, std::set<Oid>>> out;
    out.reserve(ts.states.size());
    for (const Configuration& c : ts.states) out.push_back(class_extensions(ts.model, c.snap));
    return out;
}

std::string ts_to_json(const TransitionSystem& ts) {
    std::ostringstream out;
    auto esc = [](const std::string& s) {
        std::string r;
        for (char ch : s) {
            if (ch == '"' || ch == '\\') r += '\\';
            r += ch;
        }
        return r;
    };
    out << "{\"initial\":" << ts.initial << ",\"states\":[";
    for (size_t i = 0; i < ts.states.size(); ++i) {
        const Configuration& c = ts.states[i];
        if (i) out << ",";
        out << "{\"objects\":[";
        bool first = true;
        for (const auto& [oid, obj] : c.snap.objects) {
            if (!first) out << ",";
            first = false;
            out << "{\"id\":" << oid << ",\"class\":\"" << esc(obj.cls) << "\",\"attrs\":{";
            bool fa = true;
            for (const auto& [a, v] : obj.attrs) {
                if (!fa) out << ",";
                fa = false;
                out << "\"" << esc(a) << "\":";
                if (v.kind == AttrValue::Str) out << "\"" << esc(v.s) << "\"";
                else out << (v.b ? "true" : "false");
            }
            out << "}}";
        }
        out << "],\"links\":[";
        first = true;
        for (const auto& [assoc, d, im] : c.snap.links) {
            if (!first) out << ",";
            first = false;
            out << "[\"" << esc(assoc) << "\"," << d << "," << im << "]";
        }
        out << "],\"processes\":[";
        first = true;
        for (const Process& p : c.processes) {
            if (!first) out << ",";
            first = false;
            out << "{\"anchor\":" << p.anchor << ",\"event\":\"" << esc(p.event)
                << "\",\"node\":\"" << esc(p.node) << "\"}";
        }
        out << "],\"deadlock\":" << (ts.deadlock.empty() || !ts.deadlock[i] ? "false" : "true")
            << "}";
    }
    out << "],\"edges\":[";
    bool first = true;
    for (size_t i = 0; i < ts.succ.size(); ++i)
        for (size_t k = 0; k < ts.succ[i].size(); ++k) {
            if (!first) out << ",";
            first = false;
            out << "[" << i << "," << ts.succ[i][k];
            if (!ts.edge_map.empty()) {
                out << ",[";
                bool fm = true;
                for (const auto& [o, o2] : ts.edge_map[i][k]) {
                    if (!fm) out << ",";
                    fm = false;
                    out << "[" << o << "," << o2 << "]";
                }
                out << "]";
            }
            out << "]";
        }
    out << "]}";
    return out.str();
}

}  // namespace bauml
