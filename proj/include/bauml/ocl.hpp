#ifndef BAUML_OCL_HPP
#define BAUML_OCL_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bauml/lexer.hpp"

namespace bauml {

// Immutable AST for the supported OCL subset. Trees are shared freely;
// nodes are never mutated after construction.
struct OclExpr;
using OclPtr = std::shared_ptr<const OclExpr>;

struct OclExpr {
    enum Kind {
        AllInstances,  // name = class
        Nav,           // kids[0] = base, name = role-or-attribute, at_pre
        Var,           // name
        ConstStr,      // sval
        ConstBool,     // bval
        Exists,        // kids[0] = src, var, kids[1] = body
        ForAll,
        Select,
        IsEmpty,       // kids[0] = src
        Includes,      // kids[0] = src, kids[1] = item
        Eq,
        Neq,
        And,
        Or,
        Not,
        OclIsNew,      // kids[0] = obj expr (usually a Var)
        OclIsTypeOf,   // kids[0], name = class
        OclAsType,     // kids[0], name = class
        Let,           // var, kids[0] = def, kids[1] = body
        First,         // kids[0] = src
        AsOrderedSet,  // kids[0] = src
    };

    Kind kind;
    std::string name;           // class / role / attribute
    std::string var;            // binder for Exists/ForAll/Select/Let
    std::string sval;
    bool bval = false;
    bool at_pre = false;        // Nav only
    std::vector<OclPtr> kids;
    SourcePos pos;
};

namespace ocl {

OclPtr all_instances(const std::string& cls);
OclPtr nav(OclPtr base, const std::string& step, bool at_pre = false);
OclPtr var(const std::string& name);
OclPtr const_str(const std::string& s);
OclPtr const_bool(bool b);
OclPtr binder(OclExpr::Kind k, OclPtr src, const std::string& v, OclPtr body);
OclPtr is_empty(OclPtr src);
OclPtr includes(OclPtr src, OclPtr item);
OclPtr binary(OclExpr::Kind k, OclPtr a, OclPtr b);
OclPtr neg(OclPtr a);
OclPtr is_new(OclPtr obj);
OclPtr type_of(OclPtr obj, const std::string& cls);
OclPtr as_type(OclPtr obj, const std::string& cls);
OclPtr let(const std::string& v, OclPtr def, OclPtr body);
OclPtr unary(OclExpr::Kind k, OclPtr src);

// Parses a complete expression; rejects trailing input.
OclPtr parse(const std::string& text);
// Parses one expression starting at the stream cursor; leaves trailing tokens.
OclPtr parse(TokenStream& ts);

std::string to_string(const OclExpr& e);
inline std::string to_string(const OclPtr& e) { return to_string(*e); }

bool equal(const OclExpr& a, const OclExpr& b);
inline bool equal(const OclPtr& a, const OclPtr& b) { return equal(*a, *b); }

// Pre-order traversal; visitor returns false to prune the subtree.
void walk(const OclPtr& e, const std::function<bool(const OclExpr&)>& visit);

// Conjunction flattening: And trees to a clause list.
std::vector<OclPtr> conjuncts(const OclPtr& e);

}  // namespace ocl
}  // namespace bauml

#endif
