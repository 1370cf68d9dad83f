#include "bauml/model_io.hpp"

#include <fstream>
#include <sstream>

#include "bauml/diag.hpp"
#include "bauml/lexer.hpp"

namespace bauml {

namespace {

Cardinality parse_card(TokenStream& ts) {
    Cardinality c;
    ts.expect_punct("[");
    if (ts.accept_punct("*")) {
        c.lower = 0;
        c.upper = kUnbounded;
    } else {
        if (!ts.peek().is(Token::Int))
            throw syntax_error(ts.peek().pos, "expected a cardinality bound");
        c.lower = static_cast<unsigned>(std::stoul(ts.next().text));
        ts.expect_punct("..");
        if (ts.accept_punct("*"))
            c.upper = kUnbounded;
        else if (ts.peek().is(Token::Int))
            c.upper = static_cast<unsigned>(std::stoul(ts.next().text));
        else
            throw syntax_error(ts.peek().pos, "expected an upper bound or '*'");
    }
    ts.expect_punct("]");
    return c;
}

Attribute::Kind parse_attr_kind(TokenStream& ts) {
    if (ts.accept_ident("string")) return Attribute::String;
    if (ts.accept_ident("boolean")) return Attribute::Boolean;
    throw syntax_error(ts.peek().pos, "expected 'string' or 'boolean'");
}

OclPtr parse_opt_guard(TokenStream& ts) {
    if (!ts.accept_ident("guard")) return nullptr;
    ts.expect_punct(":");
    return ocl::parse(ts);
}

void parse_class(TokenStream& ts, ClassModel& cm) {
    ClassDecl c;
    c.name = ts.expect_ident("class name");
    if (ts.accept_ident("isa")) c.super = ts.expect_ident("superclass name");
    if (ts.accept_ident("terminal")) c.is_terminal_state = true;
    if (ts.accept_punct("{")) {
        while (!ts.accept_punct("}")) {
            Attribute a;
            if (ts.accept_ident("key")) a.is_key = true;
            ts.expect_kw("attr");
            a.name = ts.expect_ident("attribute name");
            ts.expect_punct(":");
            a.kind = parse_attr_kind(ts);
            ts.expect_punct(";");
            c.attributes.push_back(std::move(a));
        }
    }
    cm.classes.push_back(std::move(c));
}

void parse_assoc(TokenStream& ts, ClassModel& cm) {
    AssocDecl a;
    a.name = ts.expect_ident("association name");
    ts.expect_punct("(");
    a.domain_class = ts.expect_ident("class name");
    a.domain_card = parse_card(ts);
    a.domain_role = ts.expect_ident("role name");
    ts.expect_punct("--");
    a.image_role = ts.expect_ident("role name");
    a.image_card = parse_card(ts);
    a.image_class = ts.expect_ident("class name");
    ts.expect_punct(")");
    ts.expect_punct(";");
    cm.associations.push_back(std::move(a));
}

void parse_machine(TokenStream& ts, BaumlModel& m) {
    StateMachine sm;
    sm.artifact = ts.expect_ident("artifact name");
    ts.expect_punct("{");
    ts.expect_kw("initial");
    sm.initial = ts.expect_ident("state name");
    ts.expect_punct(";");
    while (!ts.accept_punct("}")) {
        if (ts.accept_ident("state")) {
            sm.states.push_back(ts.expect_ident("state name"));
            ts.expect_punct(";");
            continue;
        }
        ts.expect_kw("transition");
        LifecycleTransition t;
        t.source = ts.expect_ident("state name");
        ts.expect_punct("->");
        t.target = ts.expect_ident("state name");
        ts.expect_kw("on");
        t.event = ts.expect_ident("event name");
        t.guard = parse_opt_guard(ts);
        if (!t.guard) t.guard = ocl::const_bool(true);
        ts.expect_punct(";");
        sm.transitions.push_back(std::move(t));
    }
    m.state_machines.push_back(std::move(sm));
}

void parse_activity(TokenStream& ts, BaumlModel& m) {
    ActivityDiagram ad;
    ad.event = ts.expect_ident("event name");
    ts.expect_kw("anchor");
    ad.anchor = ts.expect_ident("anchor variable");
    ts.expect_punct("{");
    while (!ts.accept_punct("}")) {
        if (ts.accept_ident("edge")) {
            ActivityEdge e;
            e.from = ts.expect_ident("node id");
            ts.expect_punct("->");
            e.to = ts.expect_ident("node id");
            e.guard = parse_opt_guard(ts);
            ts.expect_punct(";");
            ad.edges.push_back(std::move(e));
            continue;
        }
        ActivityNode n;
        if (ts.accept_ident("initial")) n.kind = ActivityNode::Initial;
        else if (ts.accept_ident("final")) n.kind = ActivityNode::Final;
        else if (ts.accept_ident("decision")) n.kind = ActivityNode::Decision;
        else if (ts.accept_ident("merge")) n.kind = ActivityNode::Merge;
        else if (ts.accept_ident("task")) n.kind = ActivityNode::Task;
        else throw syntax_error(ts.peek().pos, "expected a node or edge declaration");
        n.id = ts.expect_ident("node id");
        if (n.kind == ActivityNode::Task) {
            ts.expect_punct("=");
            n.task = ts.expect_ident("task name");
        }
        ts.expect_punct(";");
        ad.nodes.push_back(std::move(n));
    }
    m.activities.push_back(std::move(ad));
}

void parse_task(TokenStream& ts, BaumlModel& m) {
    TaskContract tc;
    tc.name = ts.expect_ident("task name");
    ts.expect_punct("(");
    if (!ts.accept_punct(")")) {
        while (true) {
            TaskParam p;
            p.name = ts.expect_ident("parameter name");
            ts.expect_punct(":");
            if (ts.peek().is_ident("string")) { ts.next(); p.kind = TaskParam::String; }
            else if (ts.peek().is_ident("boolean")) { ts.next(); p.kind = TaskParam::Boolean; }
            else {
                p.kind = TaskParam::ArtifactRef;
                p.ref_class = ts.expect_ident("class name");
            }
            tc.params.push_back(std::move(p));
            if (ts.accept_punct(")")) break;
            ts.expect_punct(",");
        }
    }
    if (ts.accept_punct(":")) tc.result = ts.expect_ident("result class");
    ts.expect_punct("{");
    if (ts.accept_ident("pre")) {
        ts.expect_punct(":");
        tc.pre = ocl::parse(ts);
        ts.expect_punct(";");
    } else {
        tc.pre = ocl::const_bool(true);
    }
    ts.expect_kw("post");
    ts.expect_punct(":");
    tc.post = ocl::parse(ts);
    ts.expect_punct(";");
    ts.expect_punct("}");
    if (m.contracts.count(tc.name))
        throw validation_error("DuplicateTask", ts.peek().pos,
                               "task '" + tc.name + "' declared twice");
    m.contracts.emplace(tc.name, std::move(tc));
}

BaumlModel parse_impl(const std::string& text) {
    TokenStream ts(lex(text));
    BaumlModel m;
    while (!ts.at_end()) {
        if (ts.accept_ident("class")) parse_class(ts, m.class_model);
        else if (ts.accept_ident("artifact")) {
            m.class_model.artifacts.insert(ts.expect_ident("artifact name"));
            ts.expect_punct(";");
        } else if (ts.accept_ident("readonly")) {
            m.class_model.readonly_marks.insert(ts.expect_ident("name"));
            ts.expect_punct(";");
        } else if (ts.accept_ident("assoc")) parse_assoc(ts, m.class_model);
        else if (ts.accept_ident("statemachine")) parse_machine(ts, m);
        else if (ts.accept_ident("activity")) parse_activity(ts, m);
        else if (ts.accept_ident("task")) parse_task(ts, m);
        else if (ts.accept_ident("constraint")) {
            m.constraints.push_back(ocl::parse(ts));
            ts.expect_punct(";");
        } else {
            throw syntax_error(ts.peek().pos, "expected a top-level declaration, got '" +
                                                  ts.peek().text + "'");
        }
    }
    return m;
}

bool is_true_const(const OclPtr& e) {
    return e && e->kind == OclExpr::ConstBool && e->bval;
}

}  // namespace

BaumlModel parse_model(const std::string& text) {
    BaumlModel m = parse_impl(text);
    m.validate();
    return m;
}

BaumlModel parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string serialize_model(const BaumlModel& m) {
    std::ostringstream out;
    const ClassModel& cm = m.class_model;
    for (const auto& c : cm.classes) {
        out << "class " << c.name;
        if (c.super) out << " isa " << *c.super;
        if (c.is_terminal_state) out << " terminal";
        if (c.attributes.empty()) {
            out << " {}\n";
        } else {
            out << " {\n";
            for (const auto& a : c.attributes) {
                out << "  ";
                if (a.is_key) out << "key ";
                out << "attr " << a.name << ": "
                    << (a.kind == Attribute::Boolean ? "boolean" : "string") << ";\n";
            }
            out << "}\n";
        }
    }
    for (const auto& art : cm.artifacts) out << "artifact " << art << ";\n";
    for (const auto& r : cm.readonly_marks) out << "readonly " << r << ";\n";
    for (const auto& a : cm.associations) {
        out << "assoc " << a.name << " (" << a.domain_class << " [" << a.domain_card.str()
            << "] " << a.domain_role << " -- " << a.image_role << " [" << a.image_card.str()
            << "] " << a.image_class << ");\n";
    }
    for (const auto& e : m.constraints) out << "constraint " << ocl::to_string(e) << ";\n";
    for (const auto& sm : m.state_machines) {
        out << "statemachine " << sm.artifact << " {\n";
        out << "  initial " << sm.initial << ";\n";
        for (const auto& s : sm.states) out << "  state " << s << ";\n";
        for (const auto& t : sm.transitions) {
            out << "  transition " << t.source << " -> " << t.target << " on " << t.event;
            if (!is_true_const(t.guard)) out << " guard: " << ocl::to_string(t.guard);
            out << ";\n";
        }
        out << "}\n";
    }
    for (const auto& ad : m.activities) {
        out << "activity " << ad.event << " anchor " << ad.anchor << " {\n";
        for (const auto& n : ad.nodes) {
            switch (n.kind) {
                case ActivityNode::Initial: out << "  initial " << n.id << ";\n"; break;
                case ActivityNode::Final: out << "  final " << n.id << ";\n"; break;
                case ActivityNode::Decision: out << "  decision " << n.id << ";\n"; break;
                case ActivityNode::Merge: out << "  merge " << n.id << ";\n"; break;
                case ActivityNode::Task:
                    out << "  task " << n.id << " = " << n.task << ";\n";
                    break;
            }
        }
        for (const auto& e : ad.edges) {
            out << "  edge " << e.from << " -> " << e.to;
            if (e.guard) out << " guard: " << ocl::to_string(e.guard);
            out << ";\n";
        }
        out << "}\n";
    }
    for (const auto& [name, tc] : m.contracts) {
        (void)name;
        out << "task " << tc.name << "(";
        for (size_t i = 0; i < tc.params.size(); ++i) {
            if (i) out << ", ";
            const TaskParam& p = tc.params[i];
            out << p.name << ": ";
            switch (p.kind) {
                case TaskParam::String: out << "string"; break;
                case TaskParam::Boolean: out << "boolean"; break;
                case TaskParam::ArtifactRef: out << p.ref_class; break;
            }
        }
        out << ")";
        if (tc.result) out << ": " << *tc.result;
        out << " {\n";
        if (!is_true_const(tc.pre)) out << "  pre: " << ocl::to_string(tc.pre) << ";\n";
        out << "  post: " << ocl::to_string(tc.post) << ";\n";
        out << "}\n";
    }
    return out.str();
}

}  // namespace bauml
