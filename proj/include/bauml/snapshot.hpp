#ifndef BAUML_SNAPSHOT_HPP
#define BAUML_SNAPSHOT_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bauml/model.hpp"

namespace bauml {

// Attribute value in an information base.
struct AttrValue {
    enum Kind { Str, Bool } kind = Str;
    std::string s;
    bool b = false;

    static AttrValue str(std::string v) { return {Str, std::move(v), false}; }
    static AttrValue boolean(bool v) { return {Bool, {}, v}; }
    bool operator==(const AttrValue& o) const {
        return kind == o.kind && (kind == Str ? s == o.s : b == o.b);
    }
    bool operator<(const AttrValue& o) const {
        if (kind != o.kind) return kind < o.kind;
        return kind == Str ? s < o.s : b < o.b;
    }
};

using Oid = unsigned;

struct Object {
    Oid id = 0;
    std::string cls;  // most specific class
    std::map<std::string, AttrValue> attrs;

    bool operator==(const Object& o) const {
        return id == o.id && cls == o.cls && attrs == o.attrs;
    }
};

// Link tuples are (association name, domain oid, image oid).
using Link = std::tuple<std::string, Oid, Oid>;

// One information base: typed objects plus links. Value semantics; the
// grounder copies snapshots freely.
struct Snapshot {
    std::map<Oid, Object> objects;
    std::set<Link> links;
    Oid next_oid = 1;

    Oid create(const std::string& cls);
    const Object* find(Oid id) const;
    bool has(Oid id) const { return objects.count(id) != 0; }

    // Instances of cls including subclasses, in oid order.
    std::vector<Oid> instances_of(const BaumlModel& m, const std::string& cls) const;
    // Image objects linked to dom through assoc, in oid order.
    std::vector<Oid> image_of(const std::string& assoc, Oid dom) const;
    std::vector<Oid> domain_of(const std::string& assoc, Oid img) const;
    void unlink_all(const std::string& assoc, Oid dom);
    void erase_object(Oid id);

    // Every string appearing as an attribute value.
    std::set<std::string> active_strings() const;

    bool operator==(const Snapshot& o) const {
        return objects == o.objects && links == o.links;
    }
};

// Value produced by query evaluation. Objs and Strs keep their elements in
// a deterministic order.
struct OclValue {
    enum Kind { Null, Obj, Str, Bool, Objs, Strs } kind = Null;
    Oid oid = 0;
    std::string s;
    bool b = false;
    std::vector<Oid> oids;
    std::vector<std::string> strs;

    static OclValue null() { return {}; }
    static OclValue object(Oid o) {
        OclValue v; v.kind = Obj; v.oid = o; return v;
    }
    static OclValue str(std::string sv) {
        OclValue v; v.kind = Str; v.s = std::move(sv); return v;
    }
    static OclValue boolean(bool bv) {
        OclValue v; v.kind = Bool; v.b = bv; return v;
    }
    static OclValue objects(std::vector<Oid> os) {
        OclValue v; v.kind = Objs; v.oids = std::move(os); return v;
    }
    static OclValue strings(std::vector<std::string> ss) {
        OclValue v; v.kind = Strs; v.strs = std::move(ss); return v;
    }

    bool truthy() const;  // Bool value; throws EvalError otherwise
};

// Variable environment for bound OCL variables and task parameters.
using Env = std::map<std::string, OclValue>;

struct EvalContext {
    const BaumlModel& model;
    const Snapshot& now;
    const Snapshot* pre = nullptr;           // @pre snapshot; null outside postconditions
    const std::set<Oid>* created = nullptr;  // oclIsNew() witnesses; null outside postconditions
    // Resolves ->first() over n candidates; unset picks index 0.
    std::function<size_t(size_t)> choose;
};

// Evaluates a boolean or value query. Throws Error("EvalError", ...) on type
// confusion or navigation from a multi-valued collection.
OclValue eval_query(const EvalContext& ctx, const OclPtr& e, const Env& env);
bool eval_bool(const EvalContext& ctx, const OclPtr& e, const Env& env);

}  // namespace bauml

#endif
