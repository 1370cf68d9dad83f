#include "bauml/mucheck.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "bauml/diag.hpp"

namespace bauml {
namespace {

using Assignment = std::map<std::string, Oid>;

// Extension of a fixpoint variable: (state, serialized assignment over the
// binder's free object variables).
using Extension = std::set<std::pair<size_t, std::string>>;

std::string restrict_key(const Assignment& asg, const std::vector<std::string>& vars) {
    std::string k;
    for (const std::string& v : vars) {
        auto it = asg.find(v);
        if (it == asg.end()) throw Error("OpenFormula", "unbound variable '" + v + "'");
        k += std::to_string(it->second);
        k += ',';
    }
    return k;
}

struct FixSlot {
    std::vector<std::string> frees;
    const Extension* ext = nullptr;
};

struct Evaluator {
    const TransitionSystem& ts;
    std::vector<Oid> domain;  // every object occurring in any state
    std::map<const MuLpFormula*, std::vector<std::string>> fv;
    std::map<const MuLpFormula*, bool> open_fix;  // has a free fixpoint variable
    std::map<std::string, FixSlot> val;
    std::map<const MuLpFormula*, std::map<std::string, bool>> memo;
    std::map<const MuLpFormula*, Extension> fix_cache;

    explicit Evaluator(const TransitionSystem& system) : ts(system) {
        std::set<Oid> seen;
        for (const Configuration& c : ts.states)
            for (const auto& [oid, obj] : c.snap.objects) seen.insert(oid);
        domain.assign(seen.begin(), seen.end());
    }

    const std::vector<std::string>& frees_of(const MuPtr& p) {
        auto it = fv.find(p.get());
        if (it != fv.end()) return it->second;
        std::set<std::string> s;
        std::set<std::string> fixes;
        collect(p, s, fixes);
        return fv[p.get()];
    }

    void collect(const MuPtr& p, std::set<std::string>& objs, std::set<std::string>& fixes) {
        std::set<std::string> o, x;
        switch (p->kind) {
            case MuLpFormula::ClassAtom: o.insert(p->var); break;
            case MuLpFormula::RelAtom:
                o.insert(p->var);
                o.insert(p->var2);
                break;
            case MuLpFormula::FixVar: x.insert(p->name); break;
            case MuLpFormula::ExistsClass:
            case MuLpFormula::ForAllClass:
                collect(p->kids[0], o, x);
                o.erase(p->var);
                break;
            case MuLpFormula::ExistsRel:
            case MuLpFormula::ForAllRel:
                collect(p->kids[0], o, x);
                o.erase(p->var);
                o.insert(p->var2);
                break;
            case MuLpFormula::Diamond:
            case MuLpFormula::Box:
                collect(p->kids[0], o, x);
                if (p->explicit_guard) o.insert(p->guard.begin(), p->guard.end());
                break;
            case MuLpFormula::Mu:
            case MuLpFormula::Nu:
                collect(p->kids[0], o, x);
                x.erase(p->name);
                break;
            default:
                for (const MuPtr& k : p->kids) collect(k, o, x);
                break;
        }
        fv[p.get()] = std::vector<std::string>(o.begin(), o.end());
        open_fix[p.get()] = !x.empty();
        objs.insert(o.begin(), o.end());
        fixes.insert(x.begin(), x.end());
    }

    bool live(size_t s, Oid o) const { return ts.states[s].snap.objects.count(o) != 0; }

    // Carries `asg` across edge k out of s; dead objects map to the never-live
    // identifier 0. False when a guard variable does not survive the step.
    bool step_assign(const MuPtr& modal, size_t s, size_t k, const Assignment& asg,
                     Assignment& out) {
        size_t t = ts.succ[s][k];
        for (const auto& [v, o] : asg) out[v] = ts.step_oid(s, k, o);
        const std::vector<std::string>& g =
            modal->explicit_guard ? modal->guard : frees_of(modal->kids[0]);
        for (const std::string& v : g) {
            auto it = out.find(v);
            if (it == out.end()) throw Error("OpenFormula", "unbound guard '" + v + "'");
            if (!live(t, it->second)) return false;
        }
        return true;
    }

    bool holds(const MuPtr& p, size_t s, Assignment& asg) {
        const std::vector<std::string>& frees = frees_of(p);
        bool cache = !open_fix.at(p.get()) && p->kind != MuLpFormula::True &&
                     p->kind != MuLpFormula::False;
        std::string key;
        if (cache) {
            key = std::to_string(s) + '|' + restrict_key(asg, frees);
            auto it = memo[p.get()].find(key);
            if (it != memo[p.get()].end()) return it->second;
        }
        bool r = eval(p, s, asg);
        if (cache) memo[p.get()][key] = r;
        return r;
    }

    bool eval(const MuPtr& p, size_t s, Assignment& asg) {
        const Snapshot& snap = ts.states[s].snap;
        switch (p->kind) {
            case MuLpFormula::True: return true;
            case MuLpFormula::False: return false;
            case MuLpFormula::ClassAtom: {
                auto it = asg.find(p->var);
                if (it == asg.end()) throw Error("OpenFormula", "unbound '" + p->var + "'");
                auto ot = snap.objects.find(it->second);
                return ot != snap.objects.end() && ts.model.is_subclass(ot->second.cls, p->name);
            }
            case MuLpFormula::RelAtom: {
                auto a = asg.find(p->var), b = asg.find(p->var2);
                if (a == asg.end() || b == asg.end())
                    throw Error("OpenFormula", "unbound relation argument");
                return snap.links.count({p->name, a->second, b->second}) != 0;
            }
            case MuLpFormula::And:
                for (const MuPtr& k : p->kids)
                    if (!holds(k, s, asg)) return false;
                return true;
            case MuLpFormula::Or:
                for (const MuPtr& k : p->kids)
                    if (holds(k, s, asg)) return true;
                return false;
            case MuLpFormula::Not: return !holds(p->kids[0], s, asg);
            case MuLpFormula::ExistsClass:
            case MuLpFormula::ForAllClass: {
                bool exists = p->kind == MuLpFormula::ExistsClass;
                for (Oid o : snap.instances_of(ts.model, p->name)) {
                    auto saved = asg.find(p->var);
                    Oid old = saved == asg.end() ? 0 : saved->second;
                    bool had = saved != asg.end();
                    asg[p->var] = o;
                    bool r = holds(p->kids[0], s, asg);
                    if (had) asg[p->var] = old;
                    else asg.erase(p->var);
                    if (r == exists) return exists;
                }
                return !exists;
            }
            case MuLpFormula::ExistsRel:
            case MuLpFormula::ForAllRel: {
                bool exists = p->kind == MuLpFormula::ExistsRel;
                auto it = asg.find(p->var2);
                if (it == asg.end()) throw Error("OpenFormula", "unbound '" + p->var2 + "'");
                for (const auto& [rel, dom, img] : snap.links) {
                    if (rel != p->name) continue;
                    Oid anchor = p->forward ? dom : img;
                    Oid bound = p->forward ? img : dom;
                    if (anchor != it->second) continue;
                    auto saved = asg.find(p->var);
                    Oid old = saved == asg.end() ? 0 : saved->second;
                    bool had = saved != asg.end();
                    asg[p->var] = bound;
                    bool r = holds(p->kids[0], s, asg);
                    if (had) asg[p->var] = old;
                    else asg.erase(p->var);
                    if (r == exists) return exists;
                }
                return !exists;
            }
            case MuLpFormula::Diamond:
                for (size_t k = 0; k < ts.succ[s].size(); ++k) {
                    Assignment stepped;
                    if (!step_assign(p, s, k, asg, stepped)) continue;
                    if (holds(p->kids[0], ts.succ[s][k], stepped)) return true;
                }
                return false;
            case MuLpFormula::Box:
                for (size_t k = 0; k < ts.succ[s].size(); ++k) {
                    Assignment stepped;
                    if (!step_assign(p, s, k, asg, stepped)) continue;
                    if (!holds(p->kids[0], ts.succ[s][k], stepped)) return false;
                }
                return true;
            case MuLpFormula::FixVar: {
                auto it = val.find(p->name);
                if (it == val.end())
                    throw Error("OpenFormula", "unbound fixpoint variable '" + p->name + "'");
                return it->second.ext->count({s, restrict_key(asg, it->second.frees)}) != 0;
            }
            case MuLpFormula::Mu:
            case MuLpFormula::Nu: return fixpoint(p, s, asg);
        }
        return false;
    }

    void enumerate(const std::vector<std::string>& frees, size_t i, Assignment& asg,
                   const std::function<void(Assignment&)>& f) {
        if (i == frees.size()) {
            f(asg);
            return;
        }
        for (Oid o : domain) {
            auto saved = asg.find(frees[i]);
            Oid old = saved == asg.end() ? 0 : saved->second;
            bool had = saved != asg.end();
            asg[frees[i]] = o;
            enumerate(frees, i + 1, asg, f);
            if (had) asg[frees[i]] = old;
            else asg.erase(frees[i]);
        }
    }

    bool fixpoint(const MuPtr& p, size_t s, Assignment& asg) {
        const std::vector<std::string>& frees = frees_of(p);
        bool closed = !open_fix.at(p.get());
        if (closed) {
            auto it = fix_cache.find(p.get());
            if (it != fix_cache.end()) return it->second.count({s, restrict_key(asg, frees)});
        }
        bool is_mu = p->kind == MuLpFormula::Mu;
        Extension cur;
        if (!is_mu) {
            Assignment probe = asg;
            for (size_t st = 0; st < ts.states.size(); ++st)
                enumerate(frees, 0, probe,
                          [&](Assignment& a) { cur.insert({st, restrict_key(a, frees)}); });
        }
        FixSlot saved_slot;
        bool shadowed = val.count(p->name) != 0;
        if (shadowed) saved_slot = val[p->name];
        for (;;) {
            val[p->name] = FixSlot{frees, &cur};
            Extension next;
            Assignment probe = asg;
            for (size_t st = 0; st < ts.states.size(); ++st)
                enumerate(frees, 0, probe, [&](Assignment& a) {
                    if (holds(p->kids[0], st, a)) next.insert({st, restrict_key(a, frees)});
                });
            const Extension& lo = is_mu ? cur : next;
            const Extension& hi = is_mu ? next : cur;
            if (!std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
                throw Error("NonMonotone", "approximant sequence is not monotone");
            if (next == cur) break;
            cur = std::move(next);
        }
        if (shadowed) val[p->name] = saved_slot;
        else val.erase(p->name);
        bool r = cur.count({s, restrict_key(asg, frees)}) != 0;
        if (closed) fix_cache[p.get()] = std::move(cur);
        return r;
    }
};

// States from which `oid`, living as an instance of `art`, can reach its
// terminal state while staying live.
std::set<std::pair<size_t, Oid>> terminal_reach(const TransitionSystem& ts,
                                                const std::string& art) {
    std::string term = ts.model.tstate(art);
    std::vector<std::vector<std::pair<size_t, size_t>>> pred(ts.states.size());
    for (size_t s = 0; s < ts.succ.size(); ++s)
        for (size_t k = 0; k < ts.succ[s].size(); ++k) pred[ts.succ[s][k]].push_back({s, k});
    std::set<std::pair<size_t, Oid>> good;
    std::deque<std::pair<size_t, Oid>> work;
    for (size_t s = 0; s < ts.states.size(); ++s)
        for (Oid o : ts.states[s].snap.instances_of(ts.model, term)) {
            good.insert({s, o});
            work.push_back({s, o});
        }
    while (!work.empty()) {
        auto [t, to] = work.front();
        work.pop_front();
        for (auto [s, k] : pred[t]) {
            for (Oid o : ts.states[s].snap.instances_of(ts.model, art)) {
                if (ts.step_oid(s, k, o) != to) continue;
                if (good.insert({s, o}).second) work.push_back({s, o});
            }
        }
    }
    return good;
}

void extract_lasso(const TransitionSystem& ts, CheckResult& out) {
    size_t bad_state = ts.states.size();
    Oid bad_oid = 0;
    std::string bad_art;
    for (const std::string& art : ts.model.class_model.artifacts) {
        auto good = terminal_reach(ts, art);
        for (size_t s = 0; s < ts.states.size() && s < bad_state; ++s)
            for (Oid o : ts.states[s].snap.instances_of(ts.model, art))
                if (!good.count({s, o})) {
                    bad_state = s;
                    bad_oid = o;
                    bad_art = art;
                    break;
                }
    }
    if (bad_state == ts.states.size()) return;

    // shortest path from the initial state
    std::vector<size_t> parent(ts.states.size(), ts.states.size());
    std::deque<size_t> bfs{ts.initial};
    parent[ts.initial] = ts.initial;
    while (!bfs.empty()) {
        size_t s = bfs.front();
        bfs.pop_front();
        for (size_t t : ts.succ[s])
            if (parent[t] == ts.states.size()) {
                parent[t] = s;
                bfs.push_back(t);
            }
    }
    std::vector<size_t> path{bad_state};
    while (path.back() != ts.initial) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());

    // walk forward keeping the witness live and stuck, following each edge's
    // identifier mapping; revisiting a (state, identifier) pair closes the loop
    auto good = terminal_reach(ts, bad_art);
    std::map<std::pair<size_t, Oid>, size_t> pos;
    std::vector<size_t> walk;
    size_t cur = bad_state;
    Oid cur_oid = bad_oid;
    bool closed = false;
    size_t entry = 0;
    for (;;) {
        auto at = pos.find({cur, cur_oid});
        if (at != pos.end()) {
            closed = true;
            entry = at->second;
            break;
        }
        pos[{cur, cur_oid}] = walk.size();
        walk.push_back(cur);
        size_t pick = ts.succ[cur].size();
        for (size_t k = 0; k < ts.succ[cur].size(); ++k) {
            size_t t = ts.succ[cur][k];
            Oid o2 = ts.step_oid(cur, k, cur_oid);
            if (o2 == 0) continue;
            auto ot = ts.states[t].snap.objects.find(o2);
            if (ot == ts.states[t].snap.objects.end()) continue;
            if (!ts.model.is_subclass(ot->second.cls, bad_art)) continue;
            if (good.count({t, o2})) continue;
            pick = k;
            break;
        }
        if (pick == ts.succ[cur].size()) break;  // witness died: no lasso, just a path
        cur_oid = ts.step_oid(cur, pick, cur_oid);
        cur = ts.succ[cur][pick];
    }
    out.witness = cur_oid;  // valid in the first loop state (or where the walk ended)
    out.prefix.assign(path.begin(), path.end() - 1);
    if (closed) {
        out.prefix.insert(out.prefix.end(), walk.begin(), walk.begin() + entry);
        out.loop.assign(walk.begin() + entry, walk.end());
    } else {
        out.prefix.insert(out.prefix.end(), walk.begin(), walk.end());
    }
}

}  // namespace

CheckResult check(const TransitionSystem& ts, const MuPtr& phi) {
    if (!mulp::free_vars(phi).empty())
        throw Error("OpenFormula", "property has free variables");
    Evaluator ev(ts);
    Assignment asg;
    CheckResult out;
    out.holds = ev.holds(phi, ts.initial, asg);
    if (!out.holds) {
        try {
            if (mulp::equal(phi, mulp::termination_property(ts.model))) extract_lasso(ts, out);
        } catch (const Error&) {
            // model without terminal states: no termination shape to match
        }
    }
    return out;
}

bool check_reachability_oracle(const TransitionSystem& ts,
                               const std::function<bool(const Configuration&)>& goal) {
    std::vector<bool> seen(ts.states.size(), false);
    std::deque<size_t> work{ts.initial};
    seen[ts.initial] = true;
    while (!work.empty()) {
        size_t s = work.front();
        work.pop_front();
        if (goal(ts.states[s])) return true;
        for (size_t t : ts.succ[s])
            if (!seen[t]) {
                seen[t] = true;
                work.push_back(t);
            }
    }
    return false;
}

}  // namespace bauml
