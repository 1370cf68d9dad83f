#include "bauml/enf.hpp"

#include <algorithm>
#include <deque>

#include "bauml/diag.hpp"

namespace bauml {

namespace {

[[noreturn]] void unsupported(const OclPtr& e, const std::string& msg) {
    throw Error("UnsupportedPostcondition",
                msg + ": " + ocl::to_string(e) + " at " + std::to_string(e->pos.line) + ":" +
                    std::to_string(e->pos.column));
}

enum class StepKind { ImageRole, DomainRole, Attr };

StepKind step_kind(const BaumlModel& m, const std::string& step) {
    if (m.class_model.assoc_by_image_role(step)) return StepKind::ImageRole;
    if (m.class_model.assoc_by_domain_role(step)) return StepKind::DomainRole;
    return StepKind::Attr;
}

bool is_role(const BaumlModel& m, const std::string& step) {
    return step_kind(m, step) != StepKind::Attr;
}

// The class of objects created through `coll->exists(v | v.oclIsNew() ...)`.
std::string created_class(const BaumlModel& m, const OclPtr& coll) {
    if (coll->kind == OclExpr::AllInstances) return coll->name;
    if (coll->kind == OclExpr::Nav) {
        if (const AssocDecl* a = m.class_model.assoc_by_image_role(coll->name)) return a->image_class;
        if (const AssocDecl* a = m.class_model.assoc_by_domain_role(coll->name)) return a->domain_class;
    }
    unsupported(coll, "creation source must be allInstances() or a role");
}

bool body_has_is_new(const BaumlModel&, const std::string& v, const std::vector<OclPtr>& body) {
    for (const auto& c : body)
        if (c->kind == OclExpr::OclIsNew && c->kids[0]->kind == OclExpr::Var &&
            c->kids[0]->name == v)
            return true;
    return false;
}

EffectClause compile_create(const BaumlModel& m, const OclPtr& conj) {
    const OclPtr& coll = conj->kids[0];
    EffectClause cl;
    cl.kind = EffectClause::Create;
    cl.var = conj->var;
    cl.cls = created_class(m, coll);
    if (coll->kind == OclExpr::Nav) {
        cl.target = coll->kids[0];
        cl.role = coll->name;
    }
    for (const auto& part : ocl::conjuncts(conj->kids[1])) {
        if (part->kind == OclExpr::OclIsNew) continue;
        if (part->kind == OclExpr::Eq) {
            const OclPtr &l = part->kids[0], &r = part->kids[1];
            if (l->kind == OclExpr::Nav && l->kids[0]->kind == OclExpr::Var &&
                l->kids[0]->name == cl.var) {
                cl.sets.emplace_back(l->name, r);
                continue;
            }
            // `result = v` binds an outer name to the new object.
            if (l->kind == OclExpr::Var && r->kind == OclExpr::Var && r->name == cl.var) {
                cl.aliases.push_back(l->name);
                continue;
            }
            if (r->kind == OclExpr::Var && l->kind == OclExpr::Var && l->name == cl.var) {
                cl.aliases.push_back(r->name);
                continue;
            }
        }
        unsupported(part, "creation body clause");
    }
    return cl;
}

std::vector<EffectClause> compile_conjuncts(const BaumlModel& m, const OclPtr& post);

EffectClause classify(const BaumlModel& m, const OclPtr& conj,
                      std::vector<OclPtr>& negated_typeofs) {
    switch (conj->kind) {
        case OclExpr::Exists: {
            auto body = ocl::conjuncts(conj->kids[1]);
            if (body_has_is_new(m, conj->var, body)) return compile_create(m, conj);
            unsupported(conj, "exists without oclIsNew in a postcondition");
        }
        case OclExpr::Not: {
            const OclPtr& inner = conj->kids[0];
            if (inner->kind == OclExpr::Exists) {
                // not (coll->exists(v | v.key = e)): keyed deletion.
                const OclPtr& body = inner->kids[1];
                if (body->kind == OclExpr::Eq) {
                    const OclPtr &l = body->kids[0], &r = body->kids[1];
                    if (l->kind == OclExpr::Nav && l->kids[0]->kind == OclExpr::Var &&
                        l->kids[0]->name == inner->var && !is_role(m, l->name)) {
                        EffectClause cl;
                        cl.kind = EffectClause::DeleteKeyed;
                        cl.target = inner->kids[0];
                        cl.role = l->name;
                        cl.value = r;
                        return cl;
                    }
                }
                unsupported(conj, "negated existence must be keyed");
            }
            if (inner->kind == OclExpr::OclIsTypeOf) {
                negated_typeofs.push_back(inner->kids[0]);
                EffectClause cl;  // resolved by the matching positive retype
                cl.kind = EffectClause::Bind;
                cl.var = "";
                return cl;
            }
            unsupported(conj, "negated clause");
        }
        case OclExpr::OclIsTypeOf: {
            EffectClause cl;
            cl.kind = EffectClause::Retype;
            cl.target = conj->kids[0];
            cl.cls = conj->name;
            return cl;
        }
        case OclExpr::Eq: {
            const OclPtr &l = conj->kids[0], &r = conj->kids[1];
            if (l->kind != OclExpr::Nav) unsupported(conj, "assignment target");
            EffectClause cl;
            cl.target = l->kids[0];
            cl.role = l->name;
            cl.value = r;
            cl.kind = is_role(m, l->name) ? EffectClause::SetLink : EffectClause::SetAttr;
            return cl;
        }
        case OclExpr::IsEmpty: {
            const OclPtr& src = conj->kids[0];
            if (src->kind == OclExpr::Nav && is_role(m, src->name)) {
                EffectClause cl;
                cl.kind = EffectClause::ClearLink;
                cl.target = src->kids[0];
                cl.role = src->name;
                return cl;
            }
            unsupported(conj, "isEmpty effect must clear a role");
        }
        case OclExpr::Includes: {
            const OclPtr& src = conj->kids[0];
            if (src->kind == OclExpr::Nav && is_role(m, src->name)) {
                EffectClause cl;
                cl.kind = EffectClause::IncludeLink;
                cl.target = src->kids[0];
                cl.role = src->name;
                cl.value = conj->kids[1];
                return cl;
            }
            // owner.role.attr->includes(e): link to the image objects keyed by e.
            if (src->kind == OclExpr::Nav && !is_role(m, src->name) &&
                src->kids[0]->kind == OclExpr::Nav && is_role(m, src->kids[0]->name)) {
                EffectClause cl;
                cl.kind = EffectClause::IncludeKeyed;
                cl.target = src->kids[0]->kids[0];
                cl.role = src->kids[0]->name;
                cl.key_attr = src->name;
                cl.value = conj->kids[1];
                return cl;
            }
            unsupported(conj, "includes effect");
        }
        case OclExpr::ForAll: {
            EffectClause cl;
            cl.kind = EffectClause::ForAllEach;
            cl.var = conj->var;
            cl.target = conj->kids[0];
            cl.body = compile_conjuncts(m, conj->kids[1]);
            return cl;
        }
        case OclExpr::ConstBool: {
            if (conj->bval) {
                EffectClause cl;
                cl.kind = EffectClause::Bind;
                cl.var = "";
                return cl;
            }
            unsupported(conj, "postcondition is false");
        }
        default:
            unsupported(conj, "conjunct fits no effect clause");
    }
}

std::vector<EffectClause> compile_conjuncts(const BaumlModel& m, const OclPtr& post) {
    if (post->kind == OclExpr::Let) {
        EffectClause bind;
        bind.kind = EffectClause::Bind;
        bind.var = post->var;
        bind.target = post->kids[0];
        auto rest = compile_conjuncts(m, post->kids[1]);
        rest.insert(rest.begin(), bind);
        return rest;
    }
    std::vector<EffectClause> out;
    std::vector<OclPtr> negated_typeofs;
    std::vector<const EffectClause*> retypes;
    for (const auto& conj : ocl::conjuncts(post)) {
        EffectClause cl = classify(m, conj, negated_typeofs);
        if (cl.kind == EffectClause::Bind && cl.var.empty()) continue;  // no-op marker
        out.push_back(std::move(cl));
    }
    for (const auto& neg : negated_typeofs) {
        bool matched = false;
        for (const auto& cl : out)
            if (cl.kind == EffectClause::Retype && ocl::equal(cl.target, neg)) matched = true;
        if (!matched)
            unsupported(neg, "negated oclIsTypeOf without a matching retype");
    }
    return out;
}

}  // namespace

EffectNormalForm to_effect_normal_form(const BaumlModel& m, const TaskContract& tc) {
    if (!tc.post) throw Error("UnsupportedPostcondition", "task '" + tc.name + "' has no postcondition");
    return EffectNormalForm{compile_conjuncts(m, tc.post)};
}

namespace {

AttrValue to_attr_value(const OclValue& v) {
    if (v.kind == OclValue::Str) return AttrValue::str(v.s);
    if (v.kind == OclValue::Bool) return AttrValue::boolean(v.b);
    throw Error("EvalError", "attribute value must be a string or boolean");
}

void init_default_attrs(const BaumlModel& m, Object& obj) {
    for (const auto& a : m.all_attributes(obj.cls)) {
        if (obj.attrs.count(a.name)) continue;
        obj.attrs[a.name] = a.kind == Attribute::Boolean ? AttrValue::boolean(false)
                                                         : AttrValue::str("");
    }
}

struct Applier {
    const BaumlModel& m;
    const Snapshot& pre;
    Snapshot post;
    Env env;
    std::set<Oid> created;
    EvalContext ctx;

    Applier(const BaumlModel& model, const Snapshot& p, const Env& e,
            std::function<size_t(size_t)> choose)
        : m(model), pre(p), post(p), env(e), ctx{model, p, &p, nullptr, std::move(choose)} {}

    OclValue ev(const OclPtr& e) { return eval_query(ctx, e, env); }
    OclValue ev1(const OclPtr& e) {
        OclValue v = ev(e);
        if (v.kind == OclValue::Objs) {
            if (v.oids.empty()) return OclValue::null();
            if (v.oids.size() == 1) return OclValue::object(v.oids[0]);
            throw Error("EvalError", "expected at most one object: " + ocl::to_string(e));
        }
        return v;
    }
    Oid obj_of(const OclPtr& e) {
        OclValue v = ev1(e);
        if (v.kind != OclValue::Obj)
            throw Error("EvalError", "expected an object: " + ocl::to_string(e));
        return v.oid;
    }
    std::vector<Oid> objs_of(const OclValue& v) {
        switch (v.kind) {
            case OclValue::Null: return {};
            case OclValue::Obj: return {v.oid};
            case OclValue::Objs: return v.oids;
            default: throw Error("EvalError", "expected objects");
        }
    }

    void add_link(const std::string& role, Oid owner, Oid other) {
        if (const AssocDecl* a = m.class_model.assoc_by_image_role(role)) {
            post.links.insert({a->name, owner, other});
            return;
        }
        const AssocDecl* a = m.class_model.assoc_by_domain_role(role);
        post.links.insert({a->name, other, owner});
    }

    void clear_role(const std::string& role, Oid owner) {
        if (const AssocDecl* a = m.class_model.assoc_by_image_role(role)) {
            post.unlink_all(a->name, owner);
            return;
        }
        const AssocDecl* a = m.class_model.assoc_by_domain_role(role);
        for (auto it = post.links.begin(); it != post.links.end();) {
            if (std::get<0>(*it) == a->name && std::get<2>(*it) == owner)
                it = post.links.erase(it);
            else
                ++it;
        }
    }

    // Returns false when the effect is infeasible.
    bool run(const std::vector<EffectClause>& clauses) {
        for (const auto& cl : clauses)
            if (!apply(cl)) return false;
        return true;
    }

    bool apply(const EffectClause& cl) {
        switch (cl.kind) {
            case EffectClause::Bind:
                env[cl.var] = ev(cl.target);
                return true;
            case EffectClause::Create: {
                Oid owner = cl.target ? obj_of(cl.target) : 0;
                Oid id = post.create(cl.cls);
                created.insert(id);
                if (cl.target) add_link(cl.role, owner, id);
                Object& obj = post.objects[id];
                for (const auto& [name, expr] : cl.sets) {
                    OclValue v = ev1(expr);
                    if (is_role(m, name)) {
                        for (Oid o : objs_of(v)) add_link(name, id, o);
                    } else {
                        obj.attrs[name] = to_attr_value(v);
                    }
                }
                init_default_attrs(m, obj);
                env[cl.var] = OclValue::object(id);
                for (const auto& alias : cl.aliases) env[alias] = OclValue::object(id);
                return true;
            }
            case EffectClause::DeleteKeyed: {
                OclValue coll = ev(cl.target);
                OclValue key = ev1(cl.value);
                for (Oid o : objs_of(coll)) {
                    const Object* obj = post.find(o);
                    if (!obj) continue;
                    auto it = obj->attrs.find(cl.role);
                    if (it == obj->attrs.end()) continue;
                    OclValue have = it->second.kind == AttrValue::Str
                                        ? OclValue::str(it->second.s)
                                        : OclValue::boolean(it->second.b);
                    bool eq = have.kind == key.kind &&
                              (have.kind == OclValue::Str ? have.s == key.s : have.b == key.b);
                    if (eq) post.erase_object(o);
                }
                return true;
            }
            case EffectClause::Retype: {
                Oid o = obj_of(cl.target);
                post.objects[o].cls = cl.cls;
                init_default_attrs(m, post.objects[o]);
                return true;
            }
            case EffectClause::SetAttr: {
                Oid o = obj_of(cl.target);
                post.objects[o].attrs[cl.role] = to_attr_value(ev1(cl.value));
                return true;
            }
            case EffectClause::SetLink: {
                Oid o = obj_of(cl.target);
                clear_role(cl.role, o);
                for (Oid other : objs_of(ev(cl.value))) add_link(cl.role, o, other);
                return true;
            }
            case EffectClause::ClearLink:
                clear_role(cl.role, obj_of(cl.target));
                return true;
            case EffectClause::IncludeLink: {
                Oid o = obj_of(cl.target);
                auto others = objs_of(ev(cl.value));
                if (others.empty()) return false;
                for (Oid other : others) add_link(cl.role, o, other);
                return true;
            }
            case EffectClause::IncludeKeyed: {
                Oid o = obj_of(cl.target);
                OclValue key = ev1(cl.value);
                const AssocDecl* a = m.class_model.assoc_by_image_role(cl.role);
                std::string other_cls = a ? a->image_class
                                          : m.class_model.assoc_by_domain_role(cl.role)->domain_class;
                bool any = false;
                for (Oid cand : pre.instances_of(m, other_cls)) {
                    const Object* obj = pre.find(cand);
                    auto it = obj->attrs.find(cl.key_attr);
                    if (it == obj->attrs.end()) continue;
                    bool eq = it->second.kind == AttrValue::Str
                                  ? (key.kind == OclValue::Str && it->second.s == key.s)
                                  : (key.kind == OclValue::Bool && it->second.b == key.b);
                    if (eq && post.has(cand)) {
                        add_link(cl.role, o, cand);
                        any = true;
                    }
                }
                return any;
            }
            case EffectClause::ForAllEach: {
                OclValue src = ev(cl.target);
                for (Oid o : objs_of(src)) {
                    env[cl.var] = OclValue::object(o);
                    for (const auto& inner : cl.body)
                        if (!apply(inner)) return false;
                }
                return true;
            }
        }
        return false;
    }
};

}  // namespace

std::vector<EffectOutcome> apply_effects(const BaumlModel& m, const EffectNormalForm& enf,
                                         const Snapshot& pre, const Env& env) {
    std::vector<EffectOutcome> out;
    // Choice-script replay: each run resolves ->first() picks per a script and
    // enqueues sibling scripts at newly met choice points.
    std::deque<std::vector<size_t>> scripts{{}};
    size_t guard = 0;
    while (!scripts.empty()) {
        if (++guard > 100000) throw Error("EvalError", "choice explosion in effect application");
        std::vector<size_t> script = scripts.front();
        scripts.pop_front();
        size_t cursor = 0;
        std::vector<size_t> trace = script;
        auto choose = [&](size_t n) -> size_t {
            if (cursor < trace.size()) return trace[cursor++];
            for (size_t i = 1; i < n; ++i) {
                std::vector<size_t> sib = trace;
                sib.push_back(i);
                scripts.push_back(std::move(sib));
            }
            trace.push_back(0);
            ++cursor;
            return 0;
        };
        Applier ap(m, pre, env, choose);
        if (ap.run(enf.clauses))
            out.push_back(EffectOutcome{std::move(ap.post), std::move(ap.env), std::move(ap.created)});
    }
    return out;
}

}  // namespace bauml
