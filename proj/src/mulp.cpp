#include "bauml/mulp.hpp"

#include <algorithm>
#include <map>

#include "bauml/diag.hpp"
#include "bauml/lexer.hpp"

namespace bauml {
namespace mulp {

namespace {

MuPtr node(MuLpFormula f) { return std::make_shared<const MuLpFormula>(std::move(f)); }

}  // namespace

MuPtr mk_true() { return node(MuLpFormula{MuLpFormula::True}); }
MuPtr mk_false() { return node(MuLpFormula{MuLpFormula::False}); }

MuPtr class_atom(const std::string& cls, const std::string& var) {
    MuLpFormula f{};
    f.kind = MuLpFormula::ClassAtom;
    f.name = cls;
    f.var = var;
    return node(std::move(f));
}

MuPtr rel_atom(const std::string& rel, const std::string& a, const std::string& b) {
    MuLpFormula f{};
    f.kind = MuLpFormula::RelAtom;
    f.name = rel;
    f.var = a;
    f.var2 = b;
    return node(std::move(f));
}

MuPtr mk_and(MuPtr a, MuPtr b) {
    MuLpFormula f{};
    f.kind = MuLpFormula::And;
    f.kids = {std::move(a), std::move(b)};
    return node(std::move(f));
}

MuPtr mk_or(MuPtr a, MuPtr b) {
    MuLpFormula f{};
    f.kind = MuLpFormula::Or;
    f.kids = {std::move(a), std::move(b)};
    return node(std::move(f));
}

MuPtr mk_not(MuPtr a) {
    MuLpFormula f{};
    f.kind = MuLpFormula::Not;
    f.kids = {std::move(a)};
    return node(std::move(f));
}

MuPtr quant_class(MuLpFormula::Kind k, const std::string& var, const std::string& cls,
                  MuPtr body) {
    MuLpFormula f{};
    f.kind = k;
    f.var = var;
    f.name = cls;
    f.kids = {std::move(body)};
    return node(std::move(f));
}

MuPtr quant_rel(MuLpFormula::Kind k, const std::string& var, const std::string& rel,
                const std::string& anchor, bool forward, MuPtr body) {
    MuLpFormula f{};
    f.kind = k;
    f.var = var;
    f.name = rel;
    f.var2 = anchor;
    f.forward = forward;
    f.kids = {std::move(body)};
    return node(std::move(f));
}

MuPtr diamond(MuPtr body) {
    MuLpFormula f{};
    f.kind = MuLpFormula::Diamond;
    f.kids = {std::move(body)};
    return node(std::move(f));
}

MuPtr box(MuPtr body) {
    MuLpFormula f{};
    f.kind = MuLpFormula::Box;
    f.kids = {std::move(body)};
    return node(std::move(f));
}

MuPtr fix_var(const std::string& name) {
    MuLpFormula f{};
    f.kind = MuLpFormula::FixVar;
    f.name = name;
    return node(std::move(f));
}

MuPtr fix(MuLpFormula::Kind k, const std::string& name, MuPtr body) {
    MuLpFormula f{};
    f.kind = k;
    f.name = name;
    f.kids = {std::move(body)};
    return node(std::move(f));
}

namespace {

using Env = std::map<std::string, std::set<std::string>>;

std::set<std::string> fv(const MuPtr& p, Env& env) {
    switch (p->kind) {
        case MuLpFormula::True:
        case MuLpFormula::False: return {};
        case MuLpFormula::ClassAtom: return {p->var};
        case MuLpFormula::RelAtom: return {p->var, p->var2};
        case MuLpFormula::FixVar: {
            auto it = env.find(p->name);
            return it == env.end() ? std::set<std::string>{} : it->second;
        }
        case MuLpFormula::And:
        case MuLpFormula::Or:
        case MuLpFormula::Not:
        case MuLpFormula::Diamond:
        case MuLpFormula::Box: {
            std::set<std::string> out;
            for (const auto& k : p->kids) {
                auto s = fv(k, env);
                out.insert(s.begin(), s.end());
            }
            return out;
        }
        case MuLpFormula::ExistsClass:
        case MuLpFormula::ForAllClass: {
            auto s = fv(p->kids[0], env);
            s.erase(p->var);
            return s;
        }
        case MuLpFormula::ExistsRel:
        case MuLpFormula::ForAllRel: {
            auto s = fv(p->kids[0], env);
            s.erase(p->var);
            s.insert(p->var2);
            return s;
        }
        case MuLpFormula::Mu:
        case MuLpFormula::Nu: {
            auto saved = env.find(p->name) != env.end()
                             ? std::optional<std::set<std::string>>(env[p->name])
                             : std::nullopt;
            std::set<std::string> s;
            while (true) {
                env[p->name] = s;
                auto s2 = fv(p->kids[0], env);
                if (s2 == s) break;
                s = std::move(s2);
            }
            if (saved) env[p->name] = *saved; else env.erase(p->name);
            return s;
        }
    }
    return {};
}

void check_monotone(const MuPtr& p, int parity, std::map<std::string, int>& bind_parity) {
    switch (p->kind) {
        case MuLpFormula::FixVar: {
            auto it = bind_parity.find(p->name);
            if (it != bind_parity.end() && it->second != parity)
                throw Error("NonMonotoneFixpoint",
                            p->pos, "fixpoint variable '" + p->name + "' under negation");
            return;
        }
        case MuLpFormula::Not:
            check_monotone(p->kids[0], 1 - parity, bind_parity);
            return;
        case MuLpFormula::Mu:
        case MuLpFormula::Nu: {
            auto saved = bind_parity.find(p->name) != bind_parity.end()
                             ? std::optional<int>(bind_parity[p->name])
                             : std::nullopt;
            bind_parity[p->name] = parity;
            check_monotone(p->kids[0], parity, bind_parity);
            if (saved) bind_parity[p->name] = *saved; else bind_parity.erase(p->name);
            return;
        }
        default:
            for (const auto& k : p->kids) check_monotone(k, parity, bind_parity);
    }
}

void check_guards(const MuPtr& p, Env& env) {
    if (p->kind == MuLpFormula::Mu || p->kind == MuLpFormula::Nu) {
        auto s = fv(p, env);
        auto saved = env.find(p->name) != env.end()
                         ? std::optional<std::set<std::string>>(env[p->name])
                         : std::nullopt;
        env[p->name] = s;
        check_guards(p->kids[0], env);
        if (saved) env[p->name] = *saved; else env.erase(p->name);
        return;
    }
    if ((p->kind == MuLpFormula::Diamond || p->kind == MuLpFormula::Box) && p->explicit_guard) {
        std::set<std::string> computed = fv(p->kids[0], env);
        std::set<std::string> given(p->guard.begin(), p->guard.end());
        if (computed != given)
            throw Error("GuardMismatch", p->pos,
                        "modal guard does not list the free variables of its body");
    }
    for (const auto& k : p->kids) check_guards(k, env);
}

// --- parser ---

MuPtr parse_phi(TokenStream& ts);

std::vector<MuPtr> flatten(MuLpFormula::Kind k, const MuPtr& p) {
    if (p->kind != k) return {p};
    auto left = flatten(k, p->kids[0]);
    left.push_back(p->kids[1]);
    return left;
}

MuPtr fold(MuLpFormula::Kind k, const std::vector<MuPtr>& parts, size_t from) {
    MuPtr acc = parts[from];
    for (size_t i = from + 1; i < parts.size(); ++i)
        acc = k == MuLpFormula::And ? mk_and(acc, parts[i]) : mk_or(acc, parts[i]);
    return acc;
}

MuPtr quant_from_atom(bool is_exists, const std::string& v, const MuPtr& atom, MuPtr rest,
                      SourcePos pos) {
    MuLpFormula::Kind ck = is_exists ? MuLpFormula::ExistsClass : MuLpFormula::ForAllClass;
    MuLpFormula::Kind rk = is_exists ? MuLpFormula::ExistsRel : MuLpFormula::ForAllRel;
    if (atom->kind == MuLpFormula::ClassAtom) {
        if (atom->var != v)
            throw syntax_error(pos, "quantifier guard must mention the bound variable");
        return quant_class(ck, v, atom->name, std::move(rest));
    }
    if (atom->kind == MuLpFormula::RelAtom) {
        if (atom->var2 == v && atom->var != v)
            return quant_rel(rk, v, atom->name, atom->var, true, std::move(rest));
        if (atom->var == v && atom->var2 != v)
            return quant_rel(rk, v, atom->name, atom->var2, false, std::move(rest));
    }
    throw syntax_error(pos, "quantifier must be guarded by a class or relation atom");
}

MuPtr parse_quantifier(TokenStream& ts, bool is_exists) {
    SourcePos pos = ts.peek().pos;
    std::string v = ts.expect_ident("bound variable");
    if (ts.accept_punct(":")) {
        std::string name = ts.expect_ident("class or relation name");
        if (ts.accept_punct("(")) {
            // R(x,.) steps forward from x; R(.,x) steps backward.
            auto arg = [&]() -> std::string {
                if (ts.accept_punct(".")) return ".";
                return ts.expect_ident("relation argument");
            };
            std::string a1 = arg();
            ts.expect_punct(",");
            std::string a2 = arg();
            ts.expect_punct(")");
            ts.expect_punct(".");
            MuPtr body = parse_phi(ts);
            bool fwd = a2 == ".";
            if ((a1 == ".") == (a2 == "."))
                throw syntax_error(pos, "relation step needs exactly one '.' placeholder");
            std::string anchor = fwd ? a1 : a2;
            return quant_rel(is_exists ? MuLpFormula::ExistsRel : MuLpFormula::ForAllRel, v,
                             name, anchor, fwd, std::move(body));
        }
        ts.expect_punct(".");
        MuPtr body = parse_phi(ts);
        return quant_class(is_exists ? MuLpFormula::ExistsClass : MuLpFormula::ForAllClass, v,
                           name, std::move(body));
    }
    ts.expect_punct(".");
    MuPtr body = parse_phi(ts);
    if (is_exists) {
        auto parts = flatten(MuLpFormula::And, body);
        if (parts.size() < 2)
            throw syntax_error(pos, "exists body must be 'guard /\\ formula'");
        return quant_from_atom(true, v, parts[0], fold(MuLpFormula::And, parts, 1), pos);
    }
    auto parts = flatten(MuLpFormula::Or, body);
    if (parts.size() < 2 || parts[0]->kind != MuLpFormula::Not)
        throw syntax_error(pos, "forall body must be 'guard -> formula'");
    return quant_from_atom(false, v, parts[0]->kids[0], fold(MuLpFormula::Or, parts, 1), pos);
}

MuPtr parse_unary(TokenStream& ts) {
    SourcePos pos = ts.peek().pos;
    auto at = [&](MuPtr p) {
        auto f = *p;
        f.pos = pos;
        return node(std::move(f));
    };
    if (ts.accept_ident("not")) return at(mk_not(parse_unary(ts)));
    if (ts.accept_punct("<>")) return at(diamond(parse_unary(ts)));
    if (ts.accept_punct("[]")) return at(box(parse_unary(ts)));
    if (ts.peek().is_punct("<") || ts.peek().is_punct("[")) {
        bool is_diamond = ts.peek().is_punct("<");
        ts.next();
        std::vector<std::string> guard;
        guard.push_back(ts.expect_ident("guard variable"));
        while (ts.accept_punct(",")) guard.push_back(ts.expect_ident("guard variable"));
        ts.expect_punct(is_diamond ? ">" : "]");
        MuLpFormula f{};
    f.kind = is_diamond ? MuLpFormula::Diamond : MuLpFormula::Box;
        f.guard = std::move(guard);
        f.explicit_guard = true;
        f.kids = {parse_unary(ts)};
        f.pos = pos;
        return node(std::move(f));
    }
    if (ts.peek().is_ident("mu") || ts.peek().is_ident("nu")) {
        bool is_mu = ts.peek().is_ident("mu");
        ts.next();
        std::string z = ts.expect_ident("fixpoint variable");
        ts.expect_punct(".");
        return at(fix(is_mu ? MuLpFormula::Mu : MuLpFormula::Nu, z, parse_phi(ts)));
    }
    if (ts.accept_ident("exists")) return parse_quantifier(ts, true);
    if (ts.accept_ident("forall")) return parse_quantifier(ts, false);
    if (ts.accept_ident("true")) return at(mk_true());
    if (ts.accept_ident("false")) return at(mk_false());
    if (ts.accept_punct("(")) {
        MuPtr p = parse_phi(ts);
        ts.expect_punct(")");
        return p;
    }
    std::string name = ts.expect_ident("formula");
    if (ts.accept_punct("(")) {
        std::string a1 = ts.expect_ident("variable");
        if (ts.accept_punct(",")) {
            std::string a2 = ts.expect_ident("variable");
            ts.expect_punct(")");
            return at(rel_atom(name, a1, a2));
        }
        ts.expect_punct(")");
        return at(class_atom(name, a1));
    }
    return at(fix_var(name));
}

MuPtr parse_and(TokenStream& ts) {
    MuPtr acc = parse_unary(ts);
    while (ts.accept_punct("/\\")) acc = mk_and(acc, parse_unary(ts));
    return acc;
}

MuPtr parse_or(TokenStream& ts) {
    MuPtr acc = parse_and(ts);
    while (ts.accept_punct("\\/")) acc = mk_or(acc, parse_and(ts));
    return acc;
}

MuPtr parse_phi(TokenStream& ts) {
    MuPtr lhs = parse_or(ts);
    if (ts.accept_punct("->")) return mk_or(mk_not(lhs), parse_phi(ts));
    return lhs;
}

}  // namespace

MuPtr parse_property(const std::string& text) {
    TokenStream ts(lex(text));
    MuPtr p = parse_phi(ts);
    if (!ts.at_end())
        throw syntax_error(ts.peek().pos, "trailing input after property");
    std::map<std::string, int> parity;
    check_monotone(p, 0, parity);
    Env env;
    check_guards(p, env);
    return p;
}

std::set<std::string> free_vars(const MuPtr& phi) {
    Env env;
    return fv(phi, env);
}

namespace {

// precedence: quantifiers and fixpoints 0, \/ 1, /\ 2, unary 3, atoms 4
std::string print(const MuPtr& p, int min_prec) {
    auto wrap = [&](int prec, std::string s) {
        return prec < min_prec ? "(" + s + ")" : s;
    };
    switch (p->kind) {
        case MuLpFormula::True: return "true";
        case MuLpFormula::False: return "false";
        case MuLpFormula::FixVar: return p->name;
        case MuLpFormula::ClassAtom: return p->name + "(" + p->var + ")";
        case MuLpFormula::RelAtom: return p->name + "(" + p->var + ", " + p->var2 + ")";
        case MuLpFormula::Not: return wrap(3, "not " + print(p->kids[0], 4));
        case MuLpFormula::Diamond:
        case MuLpFormula::Box: {
            std::string open = p->kind == MuLpFormula::Diamond ? "<" : "[";
            std::string close = p->kind == MuLpFormula::Diamond ? ">" : "]";
            std::string g;
            if (p->explicit_guard) {
                for (size_t i = 0; i < p->guard.size(); ++i)
                    g += (i ? "," : "") + p->guard[i];
                g = open + g + close;
            } else {
                g = open + close;
            }
            return wrap(3, g + " " + print(p->kids[0], 4));
        }
        case MuLpFormula::And:
            return wrap(2, print(p->kids[0], 2) + " /\\ " + print(p->kids[1], 3));
        case MuLpFormula::Or:
            return wrap(1, print(p->kids[0], 1) + " \\/ " + print(p->kids[1], 2));
        case MuLpFormula::Mu:
        case MuLpFormula::Nu:
            return wrap(0, std::string(p->kind == MuLpFormula::Mu ? "mu " : "nu ") + p->name +
                               ". " + print(p->kids[0], 0));
        case MuLpFormula::ExistsClass:
        case MuLpFormula::ForAllClass:
            return wrap(0, std::string(p->kind == MuLpFormula::ExistsClass ? "exists "
                                                                           : "forall ") +
                               p->var + ": " + p->name + ". " + print(p->kids[0], 0));
        case MuLpFormula::ExistsRel:
        case MuLpFormula::ForAllRel: {
            std::string args = p->forward ? p->var2 + ",." : "." + std::string(",") + p->var2;
            return wrap(0, std::string(p->kind == MuLpFormula::ExistsRel ? "exists "
                                                                         : "forall ") +
                               p->var + ": " + p->name + "(" + args + "). " +
                               print(p->kids[0], 0));
        }
    }
    return "?";
}

}  // namespace

std::string to_string(const MuLpFormula& phi) {
    return print(std::make_shared<const MuLpFormula>(phi), 0);
}

bool equal(const MuLpFormula& a, const MuLpFormula& b) {
    if (a.kind != b.kind || a.name != b.name || a.var != b.var || a.var2 != b.var2 ||
        a.forward != b.forward || a.explicit_guard != b.explicit_guard || a.guard != b.guard ||
        a.kids.size() != b.kids.size())
        return false;
    for (size_t i = 0; i < a.kids.size(); ++i)
        if (!equal(*a.kids[i], *b.kids[i])) return false;
    return true;
}

namespace {

MuPtr nnf(const MuPtr& p, bool flip) {
    using K = MuLpFormula;
    switch (p->kind) {
        case K::True: return flip ? mk_false() : mk_true();
        case K::False: return flip ? mk_true() : mk_false();
        case K::FixVar: return p;  // bound occurrences absorb the double negation
        case K::ClassAtom:
        case K::RelAtom: return flip ? mk_not(p) : p;
        case K::Not: return nnf(p->kids[0], !flip);
        case K::And: {
            auto l = nnf(p->kids[0], flip), r = nnf(p->kids[1], flip);
            return flip ? mk_or(l, r) : mk_and(l, r);
        }
        case K::Or: {
            auto l = nnf(p->kids[0], flip), r = nnf(p->kids[1], flip);
            return flip ? mk_and(l, r) : mk_or(l, r);
        }
        case K::ExistsClass:
        case K::ForAllClass: {
            bool ex = (p->kind == K::ExistsClass) != flip;
            return quant_class(ex ? K::ExistsClass : K::ForAllClass, p->var, p->name,
                               nnf(p->kids[0], flip));
        }
        case K::ExistsRel:
        case K::ForAllRel: {
            bool ex = (p->kind == K::ExistsRel) != flip;
            return quant_rel(ex ? K::ExistsRel : K::ForAllRel, p->var, p->name, p->var2,
                             p->forward, nnf(p->kids[0], flip));
        }
        case K::Diamond:
        case K::Box: {
            bool dia = (p->kind == K::Diamond) != flip;
            MuLpFormula f{};
    f.kind = dia ? K::Diamond : K::Box;
            f.guard = p->guard;
            f.explicit_guard = p->explicit_guard;
            f.kids = {nnf(p->kids[0], flip)};
            return node(std::move(f));
        }
        case K::Mu:
        case K::Nu: {
            bool mu = (p->kind == K::Mu) != flip;
            return fix(mu ? K::Mu : K::Nu, p->name, nnf(p->kids[0], flip));
        }
    }
    return p;
}

}  // namespace

MuPtr to_nnf(const MuPtr& phi) { return nnf(phi, false); }

namespace {

bool grammar_ok(const MuPtr& p, bool modal_guarded, GrammarResult& out) {
    using K = MuLpFormula;
    auto fail = [&](const MuPtr& w) {
        out.ok = false;
        if (out.witness.empty()) out.witness = to_string(w);
        return false;
    };
    switch (p->kind) {
        case K::True:
        case K::False:
        case K::FixVar:
        case K::ClassAtom: return true;
        case K::RelAtom: return fail(p);
        case K::Not:
            return p->kids[0]->kind == K::ClassAtom ? true : fail(p);
        case K::Mu:
        case K::Nu:
        case K::ExistsClass:
        case K::ForAllClass:
        case K::ExistsRel:
        case K::ForAllRel: return grammar_ok(p->kids[0], false, out);
        case K::Diamond:
            if (!modal_guarded) return fail(p);
            return grammar_ok(p->kids[0], false, out);
        case K::Box:
            // an unguarded box is a system-level step: fine when its body is closed
            if (!modal_guarded && !free_vars(p->kids[0]).empty()) return fail(p);
            return grammar_ok(p->kids[0], false, out);
        case K::And: {
            const MuPtr &l = p->kids[0], &r = p->kids[1];
            bool modal = r->kind == K::Diamond || r->kind == K::Box;
            if (modal && l->kind == K::ClassAtom)
                return grammar_ok(r, true, out);
            bool a = grammar_ok(l, false, out);
            bool b = grammar_ok(r, false, out);
            return a && b;
        }
        case K::Or: {
            const MuPtr &l = p->kids[0], &r = p->kids[1];
            bool modal = r->kind == K::Diamond || r->kind == K::Box;
            if (modal && l->kind == K::Not && l->kids[0]->kind == K::ClassAtom)
                return grammar_ok(r, true, out);
            bool a = grammar_ok(l, false, out);
            bool b = grammar_ok(r, false, out);
            return a && b;
        }
    }
    return fail(p);
}

}  // namespace

GrammarResult is_pseudo_navigational(const MuPtr& phi) {
    GrammarResult out;
    grammar_ok(phi, false, out);
    return out;
}

namespace {

bool subclass_either(const BaumlModel& m, const std::string& a, const std::string& b) {
    if (!m.class_model.find_class(a) || !m.class_model.find_class(b)) return false;
    return m.is_subclass(a, b) || m.is_subclass(b, a);
}

bool comp_rec(const std::string& cls, const std::string& var, const MuPtr& p,
              const BaumlModel& m, const RoleClassification& roles,
              std::vector<CompatibilityStep>& trace) {
    using K = MuLpFormula;
    auto step = [&](int rule, bool outcome) {
        trace.push_back({rule, to_string(p), outcome});
        return outcome;
    };
    switch (p->kind) {
        case K::True:
        case K::False:
        case K::FixVar: return step(1, true);
        case K::ClassAtom:
            return step(2, p->var == var && subclass_either(m, cls, p->name));
        case K::Not:
            if (p->kids[0]->kind == K::ClassAtom) {
                const auto& a = p->kids[0];
                return step(2, a->var == var && subclass_either(m, cls, a->name));
            }
            return step(2, false);
        case K::Mu:
        case K::Nu: {
            bool inner = comp_rec(cls, var, p->kids[0], m, roles, trace);
            return step(4, inner);
        }
        case K::ExistsClass:
        case K::ForAllClass: return step(5, false);
        case K::ExistsRel:
        case K::ForAllRel: {
            const AssocDecl* r = m.class_model.find_assoc(p->name);
            if (!r || p->var2 != var) return step(p->forward ? 6 : 7, false);
            if (p->forward) {
                bool ok = roles.is_target(r->image_role) &&
                          subclass_either(m, cls, r->domain_class) &&
                          comp_rec(r->image_class, p->var, p->kids[0], m, roles, trace);
                return step(6, ok);
            }
            bool ok = roles.is_target(r->domain_role) &&
                      subclass_either(m, cls, r->image_class) &&
                      comp_rec(r->domain_class, p->var, p->kids[0], m, roles, trace);
            return step(7, ok);
        }
        case K::And: {
            const MuPtr &l = p->kids[0], &r = p->kids[1];
            if ((r->kind == K::Diamond || r->kind == K::Box) && l->kind == K::ClassAtom) {
                bool ok = l->var == var && subclass_either(m, cls, l->name) &&
                          comp_rec(cls, var, r->kids[0], m, roles, trace);
                return step(8, ok);
            }
            bool a = comp_rec(cls, var, l, m, roles, trace);
            bool b = comp_rec(cls, var, r, m, roles, trace);
            return step(3, a && b);
        }
        case K::Or: {
            const MuPtr &l = p->kids[0], &r = p->kids[1];
            if ((r->kind == K::Diamond || r->kind == K::Box) && l->kind == K::Not &&
                l->kids[0]->kind == K::ClassAtom) {
                const auto& a = l->kids[0];
                bool ok = a->var == var && subclass_either(m, cls, a->name) &&
                          comp_rec(cls, var, r->kids[0], m, roles, trace);
                return step(8, ok);
            }
            bool a = comp_rec(cls, var, l, m, roles, trace);
            bool b = comp_rec(cls, var, r, m, roles, trace);
            return step(3, a && b);
        }
        case K::Diamond:
        case K::Box:
            return step(8, false);
        case K::RelAtom:
            return step(2, false);
    }
    return step(1, false);
}

void outermost_class_quantifiers(const MuPtr& p, std::vector<MuPtr>& out) {
    if (p->kind == MuLpFormula::ExistsClass || p->kind == MuLpFormula::ForAllClass) {
        out.push_back(p);
        return;
    }
    for (const auto& k : p->kids) outermost_class_quantifiers(k, out);
}

}  // namespace

CompatibilityResult comp(const std::string& cls, const std::string& var, const MuPtr& phi,
                         const BaumlModel& m, const RoleClassification& roles) {
    CompatibilityResult out;
    out.compatible = comp_rec(cls, var, phi, m, roles, out.trace);
    return out;
}

NavCompatResult navigationally_compatible(const MuPtr& phi, const BaumlModel& m) {
    std::vector<MuPtr> quants;
    outermost_class_quantifiers(phi, quants);
    if (quants.empty())
        throw Error("NoClassQuantifier", "property has no class-guarded quantifier");
    RoleClassification roles = classify_roles(m);
    std::set<std::string> artcl = m.artifact_classes();
    NavCompatResult out;
    for (const auto& q : quants) {
        out.anchors.push_back(q->name);
        if (!artcl.count(q->name)) {
            out.compatible = false;
            out.details.push_back({});
            continue;
        }
        CompatibilityResult c = comp(q->name, q->var, q->kids[0], m, roles);
        if (!c.compatible) out.compatible = false;
        out.details.push_back(std::move(c));
    }
    return out;
}

MuPtr termination_property(const BaumlModel& m) {
    MuPtr conj;
    for (const auto& art : m.class_model.artifacts) {
        std::string terminal;
        for (const auto& leaf : m.subart(art))
            if (const ClassDecl* c = m.class_model.find_class(leaf))
                if (c->is_terminal_state) terminal = leaf;
        if (terminal.empty())
            throw Error("MissingTerminalState", "artifact '" + art + "' has no terminal state");
        MuPtr body = fix(MuLpFormula::Mu, "Y",
                         mk_or(class_atom(terminal, "x"),
                               mk_and(class_atom(art, "x"), diamond(fix_var("Y")))));
        MuPtr one = quant_class(MuLpFormula::ForAllClass, "x", art, std::move(body));
        conj = conj ? mk_and(conj, one) : one;
    }
    if (!conj) conj = mk_true();
    return fix(MuLpFormula::Nu, "Z", mk_and(conj, box(fix_var("Z"))));
}

}  // namespace mulp
}  // namespace bauml
