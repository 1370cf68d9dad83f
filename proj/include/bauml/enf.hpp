#ifndef BAUML_ENF_HPP
#define BAUML_ENF_HPP

#include <string>
#include <utility>
#include <vector>

#include "bauml/model.hpp"
#include "bauml/snapshot.hpp"

namespace bauml {

// Effect normal form: a postcondition compiled into a list of concrete
// update clauses plus an implicit frame (everything else is unchanged).
// Every expression inside a clause is evaluated against the snapshot the
// task started from, so @pre is the identity here.
struct EffectClause {
    enum Kind {
        Bind,          // var := eval(target)
        Create,        // new object of cls, bound to var; target/role = owning
                       //   link (target null = free creation); sets = attribute
                       //   and role assignments; aliases = outer names for it
        DeleteKeyed,   // erase objects of `target` collection whose role = value
        Retype,        // object `target` migrates to cls
        SetAttr,       // target.role := value
        SetLink,       // links target -role-> {value}, replacing old ones
        ClearLink,     // links target -role-> {}
        IncludeLink,   // add link target -role-> value (an object expr)
        IncludeKeyed,  // add link target -role-> the image objects with role-attr = value
        ForAllEach,    // for var in eval(target): body
    };

    Kind kind = Bind;
    std::string var;
    std::string cls;
    OclPtr target;
    std::string role;      // role or attribute name; key attribute for the keyed kinds
    std::string key_attr;  // IncludeKeyed only
    OclPtr value;
    std::vector<std::pair<std::string, OclPtr>> sets;
    std::vector<std::string> aliases;
    std::vector<EffectClause> body;
};

struct EffectNormalForm {
    std::vector<EffectClause> clauses;
};

// Compiles a contract's postcondition. Throws
// Error("UnsupportedPostcondition", ...) when a conjunct fits no clause.
EffectNormalForm to_effect_normal_form(const BaumlModel& m, const TaskContract& tc);

struct EffectOutcome {
    Snapshot snap;
    Env env;                 // input env plus alias/binder additions
    std::set<Oid> created;   // objects minted by this application
};

// Applies the clauses to `pre` under `env`. One outcome per resolution of
// the nondeterministic `->asOrderedSet()->first()` picks; an infeasible
// effect (e.g. keyed include with no match) yields no outcomes.
std::vector<EffectOutcome> apply_effects(const BaumlModel& m, const EffectNormalForm& enf,
                                         const Snapshot& pre, const Env& env);

}  // namespace bauml

#endif
