#include "bauml/snapshot.hpp"

#include <algorithm>

#include "bauml/diag.hpp"

namespace bauml {

Oid Snapshot::create(const std::string& cls) {
    Oid id = next_oid++;
    objects[id] = Object{id, cls, {}};
    return id;
}

const Object* Snapshot::find(Oid id) const {
    auto it = objects.find(id);
    return it == objects.end() ? nullptr : &it->second;
}

std::vector<Oid> Snapshot::instances_of(const BaumlModel& m, const std::string& cls) const {
    std::vector<Oid> out;
    for (const auto& [id, obj] : objects)
        if (m.is_subclass(obj.cls, cls)) out.push_back(id);
    return out;
}

std::vector<Oid> Snapshot::image_of(const std::string& assoc, Oid dom) const {
    std::vector<Oid> out;
    for (const auto& [name, d, i] : links)
        if (name == assoc && d == dom) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Oid> Snapshot::domain_of(const std::string& assoc, Oid img) const {
    std::vector<Oid> out;
    for (const auto& [name, d, i] : links)
        if (name == assoc && i == img) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

void Snapshot::unlink_all(const std::string& assoc, Oid dom) {
    for (auto it = links.begin(); it != links.end();) {
        if (std::get<0>(*it) == assoc && std::get<1>(*it) == dom)
            it = links.erase(it);
        else
            ++it;
    }
}

void Snapshot::erase_object(Oid id) {
    objects.erase(id);
    for (auto it = links.begin(); it != links.end();) {
        if (std::get<1>(*it) == id || std::get<2>(*it) == id)
            it = links.erase(it);
        else
            ++it;
    }
}

std::set<std::string> Snapshot::active_strings() const {
    std::set<std::string> out;
    for (const auto& [id, obj] : objects) {
        (void)id;
        for (const auto& [name, v] : obj.attrs) {
            (void)name;
            if (v.kind == AttrValue::Str) out.insert(v.s);
        }
    }
    return out;
}

bool OclValue::truthy() const {
    if (kind != Bool) throw Error("EvalError", "expected a boolean value");
    return b;
}

namespace {

[[noreturn]] void bad(const OclExpr& e, const std::string& msg) {
    throw Error("EvalError", msg + " at " + std::to_string(e.pos.line) + ":" +
                                 std::to_string(e.pos.column));
}

// Coerces single-element collections to the element and empty ones to Null.
OclValue squeeze(OclValue v) {
    if (v.kind == OclValue::Objs) {
        if (v.oids.empty()) return OclValue::null();
        if (v.oids.size() == 1) return OclValue::object(v.oids[0]);
    }
    if (v.kind == OclValue::Strs) {
        if (v.strs.empty()) return OclValue::null();
        if (v.strs.size() == 1) return OclValue::str(v.strs[0]);
    }
    return v;
}

std::vector<OclValue> elements(const OclExpr& e, const OclValue& v) {
    std::vector<OclValue> out;
    switch (v.kind) {
        case OclValue::Null: return out;
        case OclValue::Obj:
        case OclValue::Str: out.push_back(v); return out;
        case OclValue::Objs:
            for (Oid o : v.oids) out.push_back(OclValue::object(o));
            return out;
        case OclValue::Strs:
            for (const auto& s : v.strs) out.push_back(OclValue::str(s));
            return out;
        default: bad(e, "expected a collection");
    }
}

bool value_eq(OclValue a, OclValue b) {
    a = squeeze(std::move(a));
    b = squeeze(std::move(b));
    if (a.kind == OclValue::Null || b.kind == OclValue::Null)
        return a.kind == OclValue::Null && b.kind == OclValue::Null;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case OclValue::Obj: return a.oid == b.oid;
        case OclValue::Str: return a.s == b.s;
        case OclValue::Bool: return a.b == b.b;
        case OclValue::Objs: return a.oids == b.oids;
        case OclValue::Strs: return a.strs == b.strs;
        default: return false;
    }
}

OclValue navigate(const EvalContext& ctx, const OclExpr& e, const Snapshot& snap, Oid base) {
    const Object* obj = snap.find(base);
    if (!obj) bad(e, "navigation from an object outside the snapshot");
    const std::string& step = e.name;
    if (const AssocDecl* a = ctx.model.class_model.assoc_by_image_role(step)) {
        std::vector<Oid> img = snap.image_of(a->name, base);
        if (a->image_card.bounded() && a->image_card.upper == 1) return squeeze(OclValue::objects(img));
        return OclValue::objects(std::move(img));
    }
    if (const AssocDecl* a = ctx.model.class_model.assoc_by_domain_role(step)) {
        std::vector<Oid> dom = snap.domain_of(a->name, base);
        if (a->domain_card.bounded() && a->domain_card.upper == 1) return squeeze(OclValue::objects(dom));
        return OclValue::objects(std::move(dom));
    }
    auto it = obj->attrs.find(step);
    if (it == obj->attrs.end()) bad(e, "object has no attribute '" + step + "'");
    return it->second.kind == AttrValue::Str ? OclValue::str(it->second.s)
                                             : OclValue::boolean(it->second.b);
}

OclValue eval(const EvalContext& ctx, const OclPtr& ep, const Env& env) {
    const OclExpr& e = *ep;
    switch (e.kind) {
        case OclExpr::AllInstances:
            return OclValue::objects(ctx.now.instances_of(ctx.model, e.name));
        case OclExpr::Var: {
            auto it = env.find(e.name);
            if (it == env.end()) bad(e, "unbound variable '" + e.name + "'");
            return it->second;
        }
        case OclExpr::ConstStr: return OclValue::str(e.sval);
        case OclExpr::ConstBool: return OclValue::boolean(e.bval);
        case OclExpr::Nav: {
            const Snapshot& snap = (e.at_pre && ctx.pre) ? *ctx.pre : ctx.now;
            OclValue base = squeeze(eval(ctx, e.kids[0], env));
            if (base.kind == OclValue::Null) return OclValue::null();
            if (base.kind == OclValue::Obj) return navigate(ctx, e, snap, base.oid);
            if (base.kind == OclValue::Objs) {
                // Collection navigation flattens, as in `ro.itemType.id`.
                std::vector<Oid> oids;
                std::vector<std::string> strs;
                bool saw_str = false, saw_obj = false;
                for (Oid o : base.oids) {
                    OclValue v = navigate(ctx, e, snap, o);
                    for (const OclValue& el : elements(e, v)) {
                        if (el.kind == OclValue::Obj) { oids.push_back(el.oid); saw_obj = true; }
                        else if (el.kind == OclValue::Str) { strs.push_back(el.s); saw_str = true; }
                        else bad(e, "cannot collect booleans");
                    }
                }
                if (saw_obj && saw_str) bad(e, "mixed collection");
                if (saw_str) return OclValue::strings(std::move(strs));
                std::sort(oids.begin(), oids.end());
                oids.erase(std::unique(oids.begin(), oids.end()), oids.end());
                return OclValue::objects(std::move(oids));
            }
            bad(e, "navigation from a non-object");
        }
        case OclExpr::Exists:
        case OclExpr::ForAll: {
            OclValue src = eval(ctx, e.kids[0], env);
            bool is_exists = e.kind == OclExpr::Exists;
            Env inner = env;
            for (const OclValue& el : elements(e, src)) {
                inner[e.var] = el;
                bool hit = eval(ctx, e.kids[1], inner).truthy();
                if (is_exists && hit) return OclValue::boolean(true);
                if (!is_exists && !hit) return OclValue::boolean(false);
            }
            return OclValue::boolean(!is_exists);
        }
        case OclExpr::Select: {
            OclValue src = eval(ctx, e.kids[0], env);
            Env inner = env;
            std::vector<Oid> oids;
            std::vector<std::string> strs;
            bool str_mode = false;
            for (const OclValue& el : elements(e, src)) {
                inner[e.var] = el;
                if (!eval(ctx, e.kids[1], inner).truthy()) continue;
                if (el.kind == OclValue::Obj) oids.push_back(el.oid);
                else { strs.push_back(el.s); str_mode = true; }
            }
            return str_mode ? OclValue::strings(std::move(strs)) : OclValue::objects(std::move(oids));
        }
        case OclExpr::IsEmpty: {
            OclValue src = eval(ctx, e.kids[0], env);
            switch (src.kind) {
                case OclValue::Null: return OclValue::boolean(true);
                case OclValue::Obj:
                case OclValue::Str: return OclValue::boolean(false);
                case OclValue::Objs: return OclValue::boolean(src.oids.empty());
                case OclValue::Strs: return OclValue::boolean(src.strs.empty());
                default: bad(e, "isEmpty on a boolean");
            }
        }
        case OclExpr::Includes: {
            OclValue src = eval(ctx, e.kids[0], env);
            OclValue item = squeeze(eval(ctx, e.kids[1], env));
            for (const OclValue& el : elements(e, src))
                if (value_eq(el, item)) return OclValue::boolean(true);
            return OclValue::boolean(false);
        }
        case OclExpr::Eq:
            return OclValue::boolean(value_eq(eval(ctx, e.kids[0], env), eval(ctx, e.kids[1], env)));
        case OclExpr::Neq:
            return OclValue::boolean(!value_eq(eval(ctx, e.kids[0], env), eval(ctx, e.kids[1], env)));
        case OclExpr::And: {
            if (!eval(ctx, e.kids[0], env).truthy()) return OclValue::boolean(false);
            return OclValue::boolean(eval(ctx, e.kids[1], env).truthy());
        }
        case OclExpr::Or: {
            if (eval(ctx, e.kids[0], env).truthy()) return OclValue::boolean(true);
            return OclValue::boolean(eval(ctx, e.kids[1], env).truthy());
        }
        case OclExpr::Not:
            return OclValue::boolean(!eval(ctx, e.kids[0], env).truthy());
        case OclExpr::OclIsNew: {
            OclValue v = squeeze(eval(ctx, e.kids[0], env));
            if (v.kind != OclValue::Obj) bad(e, "oclIsNew on a non-object");
            return OclValue::boolean(ctx.created && ctx.created->count(v.oid));
        }
        case OclExpr::OclIsTypeOf: {
            OclValue v = squeeze(eval(ctx, e.kids[0], env));
            if (v.kind != OclValue::Obj) bad(e, "oclIsTypeOf on a non-object");
            const Object* obj = ctx.now.find(v.oid);
            if (!obj) {
                const Snapshot* other = ctx.pre;
                obj = other ? other->find(v.oid) : nullptr;
            }
            if (!obj) bad(e, "oclIsTypeOf on a vanished object");
            return OclValue::boolean(obj->cls == e.name);
        }
        case OclExpr::OclAsType:
            return eval(ctx, e.kids[0], env);
        case OclExpr::Let: {
            Env inner = env;
            inner[e.var] = eval(ctx, e.kids[0], env);
            return eval(ctx, e.kids[1], inner);
        }
        case OclExpr::AsOrderedSet:
            return eval(ctx, e.kids[0], env);
        case OclExpr::First: {
            OclValue src = eval(ctx, e.kids[0], env);
            auto els = elements(e, src);
            if (els.empty()) return OclValue::null();
            size_t idx = ctx.choose ? ctx.choose(els.size()) : 0;
            return els[idx];
        }
    }
    bad(e, "unhandled expression");
}

}  // namespace

OclValue eval_query(const EvalContext& ctx, const OclPtr& e, const Env& env) {
    return eval(ctx, e, env);
}

bool eval_bool(const EvalContext& ctx, const OclPtr& e, const Env& env) {
    return eval(ctx, e, env).truthy();
}

}  // namespace bauml
