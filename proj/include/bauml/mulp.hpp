#ifndef BAUML_MULP_HPP
#define BAUML_MULP_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bauml/analysis.hpp"
#include "bauml/model.hpp"

namespace bauml {

// First-order mu-calculus property AST. Quantifiers are guarded by a class
// or by a relation step from an already-bound variable; modalities carry a
// liveness guard over the free variables of their body.
struct MuLpFormula;
using MuPtr = std::shared_ptr<const MuLpFormula>;

struct MuLpFormula {
    enum Kind {
        True,
        False,
        ClassAtom,    // name(var)
        RelAtom,      // name(var, var2)
        And,
        Or,
        Not,
        ExistsClass,  // exists var: name. kids[0]
        ForAllClass,
        ExistsRel,    // exists var: name(var2,.) forward / name(.,var2) backward
        ForAllRel,
        Diamond,      // <> kids[0], guard = free vars of body unless explicit
        Box,
        FixVar,       // name
        Mu,           // mu name. kids[0]
        Nu,
    };

    Kind kind;
    std::string name;
    std::string var;
    std::string var2;
    bool forward = true;               // relation quantifiers only
    std::vector<std::string> guard;    // Diamond/Box: explicit guard variables
    bool explicit_guard = false;
    std::vector<MuPtr> kids;
    SourcePos pos;
};

namespace mulp {

MuPtr mk_true();
MuPtr mk_false();
MuPtr class_atom(const std::string& cls, const std::string& var);
MuPtr rel_atom(const std::string& rel, const std::string& a, const std::string& b);
MuPtr mk_and(MuPtr a, MuPtr b);
MuPtr mk_or(MuPtr a, MuPtr b);
MuPtr mk_not(MuPtr a);
MuPtr quant_class(MuLpFormula::Kind k, const std::string& var, const std::string& cls, MuPtr body);
MuPtr quant_rel(MuLpFormula::Kind k, const std::string& var, const std::string& rel,
                const std::string& anchor, bool forward, MuPtr body);
MuPtr diamond(MuPtr body);
MuPtr box(MuPtr body);
MuPtr fix_var(const std::string& name);
MuPtr fix(MuLpFormula::Kind k, const std::string& name, MuPtr body);

// Parses the ASCII property syntax and checks fixpoint monotonicity and
// explicit modal guards. Throws SyntaxError, NonMonotoneFixpoint,
// GuardMismatch.
MuPtr parse_property(const std::string& text);

std::string to_string(const MuLpFormula& phi);
inline std::string to_string(const MuPtr& phi) { return to_string(*phi); }

bool equal(const MuLpFormula& a, const MuLpFormula& b);
inline bool equal(const MuPtr& a, const MuPtr& b) { return equal(*a, *b); }

// Free object variables; fixpoint variables resolve to the free variables
// of their binding formula.
std::set<std::string> free_vars(const MuPtr& phi);

// Negation normal form: negation only on atoms; duals swap quantifiers,
// modalities and fixpoints.
MuPtr to_nnf(const MuPtr& phi);

struct GrammarResult {
    bool ok = true;
    std::string witness;  // first offending subformula
};

// Membership in the guarded property grammar: class/relation-guarded
// quantification, class-guarded modalities (an unguarded box is allowed
// when its body is closed), negation on class atoms only.
GrammarResult is_pseudo_navigational(const MuPtr& phi);

struct CompatibilityStep {
    int rule = 0;  // 1..8
    std::string formula;
    bool outcome = true;
};

struct CompatibilityResult {
    bool compatible = true;
    std::vector<CompatibilityStep> trace;
};

CompatibilityResult comp(const std::string& cls, const std::string& var, const MuPtr& phi,
                         const BaumlModel& m, const RoleClassification& roles);

struct NavCompatResult {
    bool compatible = true;
    std::vector<std::string> anchors;  // class of each outermost class quantifier
    std::vector<CompatibilityResult> details;
};

// Locates every outermost class-quantified subformula; each must be
// anchored at an artifact-hierarchy class and pass comp. Throws
// Error("NoClassQuantifier") when none exists.
NavCompatResult navigationally_compatible(const MuPtr& phi, const BaumlModel& m);

// nu Z. (/\_{A in arts} forall x. A(x) -> mu Y. tstate(A)(x) \/ (A(x) /\ <>Y)) /\ [] Z
// Throws Error("MissingTerminalState") when an artifact has no terminal leaf.
MuPtr termination_property(const BaumlModel& m);

}  // namespace mulp
}  // namespace bauml

#endif
