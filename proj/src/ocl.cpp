#include "bauml/ocl.hpp"

#include <sstream>

namespace bauml {
namespace ocl {

namespace {
std::shared_ptr<OclExpr> node(OclExpr::Kind k) {
    auto n = std::make_shared<OclExpr>();
    n->kind = k;
    return n;
}
}  // namespace

OclPtr all_instances(const std::string& cls) {
    auto n = node(OclExpr::AllInstances);
    n->name = cls;
    return n;
}
OclPtr nav(OclPtr base, const std::string& step, bool at_pre) {
    auto n = node(OclExpr::Nav);
    n->kids = {std::move(base)};
    n->name = step;
    n->at_pre = at_pre;
    return n;
}
OclPtr var(const std::string& name) {
    auto n = node(OclExpr::Var);
    n->name = name;
    return n;
}
OclPtr const_str(const std::string& s) {
    auto n = node(OclExpr::ConstStr);
    n->sval = s;
    return n;
}
OclPtr const_bool(bool b) {
    auto n = node(OclExpr::ConstBool);
    n->bval = b;
    return n;
}
OclPtr binder(OclExpr::Kind k, OclPtr src, const std::string& v, OclPtr body) {
    auto n = node(k);
    n->kids = {std::move(src), std::move(body)};
    n->var = v;
    return n;
}
OclPtr is_empty(OclPtr src) {
    auto n = node(OclExpr::IsEmpty);
    n->kids = {std::move(src)};
    return n;
}
OclPtr includes(OclPtr src, OclPtr item) {
    auto n = node(OclExpr::Includes);
    n->kids = {std::move(src), std::move(item)};
    return n;
}
OclPtr binary(OclExpr::Kind k, OclPtr a, OclPtr b) {
    auto n = node(k);
    n->kids = {std::move(a), std::move(b)};
    return n;
}
OclPtr neg(OclPtr a) {
    auto n = node(OclExpr::Not);
    n->kids = {std::move(a)};
    return n;
}
OclPtr is_new(OclPtr obj) {
    auto n = node(OclExpr::OclIsNew);
    n->kids = {std::move(obj)};
    return n;
}
OclPtr type_of(OclPtr obj, const std::string& cls) {
    auto n = node(OclExpr::OclIsTypeOf);
    n->kids = {std::move(obj)};
    n->name = cls;
    return n;
}
OclPtr as_type(OclPtr obj, const std::string& cls) {
    auto n = node(OclExpr::OclAsType);
    n->kids = {std::move(obj)};
    n->name = cls;
    return n;
}
OclPtr let(const std::string& v, OclPtr def, OclPtr body) {
    auto n = node(OclExpr::Let);
    n->var = v;
    n->kids = {std::move(def), std::move(body)};
    return n;
}
OclPtr unary(OclExpr::Kind k, OclPtr src) {
    auto n = node(k);
    n->kids = {std::move(src)};
    return n;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(TokenStream& ts) : ts_(ts) {}

    OclPtr expr() {
        if (ts_.peek().is_ident("let")) return let_expr();
        return or_expr();
    }

private:
    TokenStream& ts_;

    OclPtr let_expr() {
        ts_.expect_kw("let");
        std::vector<std::pair<std::string, OclPtr>> binds;
        do {
            std::string v = ts_.expect_ident("let variable");
            ts_.expect_punct("=");
            binds.emplace_back(v, or_expr());
        } while (ts_.accept_punct(","));
        ts_.expect_kw("in");
        OclPtr body = expr();
        for (auto it = binds.rbegin(); it != binds.rend(); ++it)
            body = let(it->first, it->second, body);
        return body;
    }

    OclPtr or_expr() {
        OclPtr e = and_expr();
        while (ts_.peek().is_ident("or")) {
            ts_.next();
            e = binary(OclExpr::Or, e, and_expr());
        }
        return e;
    }

    OclPtr and_expr() {
        OclPtr e = cmp_expr();
        while (ts_.peek().is_ident("and")) {
            ts_.next();
            e = binary(OclExpr::And, e, cmp_expr());
        }
        return e;
    }

    OclPtr cmp_expr() {
        OclPtr e = unary_expr();
        if (ts_.accept_punct("=")) return binary(OclExpr::Eq, e, unary_expr());
        if (ts_.accept_punct("<>")) return binary(OclExpr::Neq, e, unary_expr());
        return e;
    }

    OclPtr unary_expr() {
        if (ts_.peek().is_ident("not")) {
            ts_.next();
            return neg(unary_expr());
        }
        return postfix();
    }

    OclPtr postfix() {
        OclPtr e = primary();
        for (;;) {
            if (ts_.peek().is_punct(".")) {
                ts_.next();
                SourcePos pos = ts_.peek().pos;
                std::string step = ts_.expect_ident("navigation step");
                if (step == "allInstances") {
                    ts_.expect_punct("(");
                    ts_.expect_punct(")");
                    if (e->kind != OclExpr::Var)
                        throw syntax_error(pos, "allInstances() requires a class name");
                    e = all_instances(e->name);
                } else if (step == "oclIsNew") {
                    ts_.expect_punct("(");
                    ts_.expect_punct(")");
                    e = is_new(e);
                } else if (step == "oclIsTypeOf" || step == "oclAsType") {
                    ts_.expect_punct("(");
                    std::string cls = ts_.expect_ident("class name");
                    ts_.expect_punct(")");
                    e = step == "oclIsTypeOf" ? type_of(e, cls) : as_type(e, cls);
                } else {
                    bool pre = false;
                    if (ts_.peek().is_punct("@")) {
                        ts_.next();
                        ts_.expect_kw("pre");
                        pre = true;
                    }
                    e = nav(e, step, pre);
                }
            } else if (ts_.peek().is_punct("->")) {
                ts_.next();
                SourcePos pos = ts_.peek().pos;
                std::string op = ts_.expect_ident("collection operation");
                ts_.expect_punct("(");
                if (op == "exists" || op == "forAll" || op == "select") {
                    std::string v = ts_.expect_ident("iterator variable");
                    ts_.expect_punct("|");
                    OclPtr body = expr();
                    ts_.expect_punct(")");
                    OclExpr::Kind k = op == "exists"   ? OclExpr::Exists
                                      : op == "forAll" ? OclExpr::ForAll
                                                       : OclExpr::Select;
                    e = binder(k, e, v, body);
                } else if (op == "isEmpty") {
                    ts_.expect_punct(")");
                    e = is_empty(e);
                } else if (op == "includes") {
                    OclPtr item = expr();
                    ts_.expect_punct(")");
                    e = includes(e, item);
                } else if (op == "first") {
                    ts_.expect_punct(")");
                    e = unary(OclExpr::First, e);
                } else if (op == "asOrderedSet") {
                    ts_.expect_punct(")");
                    e = unary(OclExpr::AsOrderedSet, e);
                } else {
                    throw syntax_error(pos, "unsupported collection operation '" + op + "'");
                }
            } else {
                return e;
            }
        }
    }

    OclPtr primary() {
        const Token& t = ts_.peek();
        if (t.is(Token::Str)) {
            ts_.next();
            return const_str(t.text);
        }
        if (t.is_ident("true")) {
            ts_.next();
            return const_bool(true);
        }
        if (t.is_ident("false")) {
            ts_.next();
            return const_bool(false);
        }
        if (t.is(Token::Ident)) {
            ts_.next();
            auto v = var(t.text);
            const_cast<OclExpr*>(v.get())->pos = t.pos;
            return v;
        }
        if (t.is_punct("(")) {
            ts_.next();
            OclPtr e = expr();
            ts_.expect_punct(")");
            return e;
        }
        throw syntax_error(t.pos, "expected expression, got '" + t.text + "'");
    }
};

}  // namespace

OclPtr parse(TokenStream& ts) { return Parser(ts).expr(); }

OclPtr parse(const std::string& text) {
    TokenStream ts(lex(text));
    OclPtr e = parse(ts);
    if (!ts.at_end())
        throw syntax_error(ts.peek().pos, "trailing input after expression: '" + ts.peek().text + "'");
    return e;
}

// ---------------------------------------------------------------------------
// Printer (round-trips through parse)
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: 0 or, 1 and, 2 cmp, 3 unary, 4 postfix/primary.
int prec(const OclExpr& e) {
    switch (e.kind) {
        case OclExpr::Or: return 0;
        case OclExpr::And: return 1;
        case OclExpr::Eq:
        case OclExpr::Neq: return 2;
        case OclExpr::Not: return 3;
        case OclExpr::Let: return -1;  // extends maximally right; parenthesized as any child
        default: return 4;
    }
}

void print(const OclExpr& e, std::ostream& os, int min_prec) {
    bool paren = prec(e) < min_prec;
    if (paren) os << "(";
    switch (e.kind) {
        case OclExpr::AllInstances: os << e.name << ".allInstances()"; break;
        case OclExpr::Nav:
            print(*e.kids[0], os, 4);
            os << "." << e.name;
            if (e.at_pre) os << "@pre";
            break;
        case OclExpr::Var: os << e.name; break;
        case OclExpr::ConstStr: os << '"' << e.sval << '"'; break;
        case OclExpr::ConstBool: os << (e.bval ? "true" : "false"); break;
        case OclExpr::Exists:
        case OclExpr::ForAll:
        case OclExpr::Select: {
            const char* op = e.kind == OclExpr::Exists   ? "exists"
                             : e.kind == OclExpr::ForAll ? "forAll"
                                                         : "select";
            print(*e.kids[0], os, 4);
            os << "->" << op << "(" << e.var << " | ";
            print(*e.kids[1], os, 0);
            os << ")";
            break;
        }
        case OclExpr::IsEmpty:
            print(*e.kids[0], os, 4);
            os << "->isEmpty()";
            break;
        case OclExpr::Includes:
            print(*e.kids[0], os, 4);
            os << "->includes(";
            print(*e.kids[1], os, 0);
            os << ")";
            break;
        case OclExpr::Eq:
        case OclExpr::Neq:
            print(*e.kids[0], os, 3);
            os << (e.kind == OclExpr::Eq ? " = " : " <> ");
            print(*e.kids[1], os, 3);
            break;
        case OclExpr::And:
        case OclExpr::Or: {
            int p = prec(e);
            print(*e.kids[0], os, p);
            os << (e.kind == OclExpr::And ? " and " : " or ");
            print(*e.kids[1], os, p + 1);
            break;
        }
        case OclExpr::Not:
            os << "not ";
            print(*e.kids[0], os, 3);
            break;
        case OclExpr::OclIsNew:
            print(*e.kids[0], os, 4);
            os << ".oclIsNew()";
            break;
        case OclExpr::OclIsTypeOf:
            print(*e.kids[0], os, 4);
            os << ".oclIsTypeOf(" << e.name << ")";
            break;
        case OclExpr::OclAsType:
            print(*e.kids[0], os, 4);
            os << ".oclAsType(" << e.name << ")";
            break;
        case OclExpr::Let:
            os << "let " << e.var << " = ";
            print(*e.kids[0], os, 0);
            os << " in ";
            print(*e.kids[1], os, -1);
            break;
        case OclExpr::First:
            print(*e.kids[0], os, 4);
            os << "->first()";
            break;
        case OclExpr::AsOrderedSet:
            print(*e.kids[0], os, 4);
            os << "->asOrderedSet()";
            break;
    }
    if (paren) os << ")";
}

}  // namespace

std::string to_string(const OclExpr& e) {
    std::ostringstream os;
    print(e, os, -1);
    return os.str();
}

bool equal(const OclExpr& a, const OclExpr& b) {
    if (a.kind != b.kind || a.name != b.name || a.var != b.var || a.sval != b.sval ||
        a.bval != b.bval || a.at_pre != b.at_pre || a.kids.size() != b.kids.size())
        return false;
    for (size_t i = 0; i < a.kids.size(); ++i)
        if (!equal(*a.kids[i], *b.kids[i])) return false;
    return true;
}

void walk(const OclPtr& e, const std::function<bool(const OclExpr&)>& visit) {
    if (!e) return;
    if (!visit(*e)) return;
    for (const auto& k : e->kids) walk(k, visit);
}

std::vector<OclPtr> conjuncts(const OclPtr& e) {
    std::vector<OclPtr> out;
    if (e->kind == OclExpr::And) {
        for (const auto& k : e->kids) {
            auto sub = conjuncts(k);
            out.insert(out.end(), sub.begin(), sub.end());
        }
    } else {
        out.push_back(e);
    }
    return out;
}

}  // namespace ocl
}  // namespace bauml
