#include "bauml/twocm.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "bauml/diag.hpp"
#include "bauml/model_io.hpp"

namespace bauml {
namespace twocm {

// ---------------------------------------------------------------------------
// Machine validation, parsing, serialization
// ---------------------------------------------------------------------------

void validate(const CounterMachine& m) {
    auto bad = [](const std::string& msg) { return Error("BadMachine", msg); };
    if (m.counters < 1) throw bad("machine needs at least one counter");
    if (m.commands.empty()) throw bad("machine needs at least one command");
    if (m.commands.back().kind != Command::Halt) throw bad("last command must be HALT");
    int n = static_cast<int>(m.commands.size());
    for (int k = 1; k <= n; ++k) {
        const Command& c = m.commands[k - 1];
        auto check_goto = [&](int g) {
            if (g < 1 || g > n)
                throw bad("command " + std::to_string(k) + ": goto " + std::to_string(g) +
                          " outside 1.." + std::to_string(n));
        };
        switch (c.kind) {
            case Command::Inc:
                if (c.counter < 1 || c.counter > m.counters)
                    throw bad("command " + std::to_string(k) + ": bad counter index");
                check_goto(c.goto1);
                break;
            case Command::CDec:
                if (c.counter < 1 || c.counter > m.counters)
                    throw bad("command " + std::to_string(k) + ": bad counter index");
                check_goto(c.goto1);
                check_goto(c.goto2);
                break;
            case Command::Halt:
                break;
        }
    }
}

CounterMachine parse_machine(const std::string& text) {
    CounterMachine m;
    m.counters = 2;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int expected = 1;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int index = 0;
        char colon = 0;
        if (!(ls >> index)) continue;  // blank line
        SourcePos pos{lineno, 1};
        if (!(ls >> colon) || colon != ':') throw syntax_error(pos, "expected ':' after index");
        if (index != expected)
            throw syntax_error(pos, "commands must be numbered consecutively from 1");
        std::string word;
        if (!(ls >> word)) throw syntax_error(pos, "missing command keyword");
        Command c;
        if (word == "HALT") {
            c.kind = Command::Halt;
        } else if (word == "INC") {
            c.kind = Command::Inc;
            std::string kw;
            if (!(ls >> c.counter >> kw >> c.goto1) || kw != "GOTO")
                throw syntax_error(pos, "expected `INC c GOTO k'`");
        } else if (word == "DEC") {
            c.kind = Command::CDec;
            std::string kw1, kw2;
            if (!(ls >> c.counter >> kw1 >> c.goto1 >> kw2 >> c.goto2) || kw1 != "ZERO" ||
                kw2 != "ELSE")
                throw syntax_error(pos, "expected `DEC c ZERO k' ELSE k''`");
        } else {
            throw syntax_error(pos, "unknown command '" + word + "'");
        }
        std::string extra;
        if (ls >> extra) throw syntax_error(pos, "trailing input '" + extra + "'");
        m.commands.push_back(c);
        ++expected;
        if (c.counter > m.counters) m.counters = c.counter;
    }
    validate(m);
    return m;
}

CounterMachine parse_machine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_machine(buf.str());
}

std::string serialize_machine(const CounterMachine& m) {
    std::ostringstream out;
    for (size_t k = 0; k < m.commands.size(); ++k) {
        const Command& c = m.commands[k];
        out << (k + 1) << ": ";
        switch (c.kind) {
            case Command::Inc: out << "INC " << c.counter << " GOTO " << c.goto1; break;
            case Command::CDec:
                out << "DEC " << c.counter << " ZERO " << c.goto1 << " ELSE " << c.goto2;
                break;
            case Command::Halt: out << "HALT"; break;
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Interpreter
// ---------------------------------------------------------------------------

RunResult run(const CounterMachine& m, const std::vector<long>& input, long step_limit,
              bool want_trace) {
    validate(m);
    if (static_cast<int>(input.size()) != m.counters)
        throw Error("BadInput", "expected " + std::to_string(m.counters) + " counter values");
    for (long v : input)
        if (v < 0) throw Error("BadInput", "counter values must be non-negative");

    RunResult r;
    std::vector<long> c = input;
    for (long v : c) r.max_counter = std::max(r.max_counter, v);
    int pc = 1;
    while (r.steps < step_limit) {
        if (want_trace) r.trace.emplace_back(pc, c);
        const Command& cmd = m.commands[pc - 1];
        if (cmd.kind == Command::Halt) {
            r.halted = true;
            break;
        }
        ++r.steps;
        if (cmd.kind == Command::Inc) {
            long& v = c[cmd.counter - 1];
            ++v;
            r.max_counter = std::max(r.max_counter, v);
            pc = cmd.goto1;
        } else {
            long& v = c[cmd.counter - 1];
            if (v == 0) {
                pc = cmd.goto1;
            } else {
                --v;
                pc = cmd.goto2;
            }
        }
    }
    if (!r.halted && r.steps >= step_limit) {
        if (want_trace) r.trace.emplace_back(pc, c);
    } else if (r.halted && want_trace) {
        // final configuration already recorded before detecting Halt
    }
    r.final_counters = c;
    return r;
}

CounterMachine normalize_input(const CounterMachine& m, long d1, long d2) {
    validate(m);
    if (m.counters != 2) throw Error("BadInput", "normalization applies to 2-counter machines");
    if (d1 < 0 || d2 < 0) throw Error("BadInput", "counter values must be non-negative");
    if (d1 == 0 && d2 == 0) return m;
    long shift = d1 + d2;
    CounterMachine out;
    out.counters = 2;
    for (long i = 0; i < shift; ++i) {
        Command c;
        c.kind = Command::Inc;
        c.counter = i < d1 ? 1 : 2;
        c.goto1 = static_cast<int>(i + 2);
        out.commands.push_back(c);
    }
    for (const Command& c : m.commands) {
        Command shifted = c;
        if (c.kind != Command::Halt) {
            shifted.goto1 = c.goto1 + static_cast<int>(shift);
            if (c.kind == Command::CDec) shifted.goto2 = c.goto2 + static_cast<int>(shift);
        }
        out.commands.push_back(shifted);
    }
    validate(out);
    return out;
}

// ---------------------------------------------------------------------------
// Encoders
// ---------------------------------------------------------------------------

namespace {

std::string num(int k) { return std::to_string(k); }

void require_two_counters(const CounterMachine& m) {
    validate(m);
    if (m.counters != 2) throw Error("BadInput", "encoders require a 2-counter machine");
}

// Lifecycle shared by the single-artifact encodings: one machine instance,
// one activity executing the whole program.
const char kLifecycle[] = R"(
artifact TwoCM;

statemachine TwoCM {
  initial Ready2CM;
  state Ready2CM;
  state Halted2CM;
  transition PRE_INITIAL -> Ready2CM on InitCM;
  transition Ready2CM -> Halted2CM on ExecCM;
}

activity InitCM anchor cm {
  initial n0;
  task t1 = Init;
  final n9;
  edge n0 -> t1;
  edge t1 -> n9;
}
)";

const char kHierarchy[] =
    "class TwoCM { key attr id: string; }\n"
    "class Ready2CM isa TwoCM {}\n"
    "class Halted2CM isa TwoCM terminal {}\n";

const char kHaltTask[] = R"(
task Halt(cm: TwoCM) {
  post: not cm.oclIsTypeOf(Ready2CM) and cm.oclIsTypeOf(Halted2CM);
}
)";

// The program becomes one activity: a merge per command, command bodies
// emitted by `body` with entry node b<k>, control flow through the gotos.
// The dispatch decision d0 and the per-command escape decisions e<k> carry
// constant guards; their false branches exist only so that every node is
// reachable and reaches the final node.
std::string exec_activity(
    const CounterMachine& mach,
    const std::function<void(int, const Command&, std::string&, std::string&)>& body) {
    int n = static_cast<int>(mach.commands.size());
    std::string nodes;
    std::string edges;
    nodes += "  initial n0;\n  decision d0;\n";
    edges += "  edge n0 -> d0;\n";
    for (int k = 1; k <= n; ++k)
        edges += "  edge d0 -> m" + num(k) + " guard: " + (k == 1 ? "true" : "false") + ";\n";
    for (int k = 1; k < n; ++k) {
        nodes += "  merge m" + num(k) + ";\n  decision e" + num(k) + ";\n";
        edges += "  edge m" + num(k) + " -> e" + num(k) + ";\n";
        edges += "  edge e" + num(k) + " -> b" + num(k) + " guard: true;\n";
        edges += "  edge e" + num(k) + " -> m" + num(n) + " guard: false;\n";
        body(k, mach.commands[k - 1], nodes, edges);
    }
    nodes += "  merge m" + num(n) + ";\n  task th = Halt;\n  final n9;\n";
    edges += "  edge m" + num(n) + " -> th;\n  edge th -> n9;\n";
    return "activity ExecCM anchor cm {\n" + nodes + edges + "}\n";
}

// Inc/dec bodies for the encodings whose zero test Q0 splits a decision in
// two; `q0` yields the emptiness guard for a counter.
std::function<void(int, const Command&, std::string&, std::string&)> two_way_body(
    const std::function<std::string(int)>& q0) {
    return [q0](int k, const Command& c, std::string& nodes, std::string& edges) {
        if (c.kind == Command::Inc) {
            nodes += "  task b" + num(k) + " = Inc" + num(c.counter) + ";\n";
            edges += "  edge b" + num(k) + " -> m" + num(c.goto1) + ";\n";
        } else {
            nodes += "  decision b" + num(k) + ";\n";
            nodes += "  task t" + num(k) + " = Dec" + num(c.counter) + ";\n";
            edges += "  edge b" + num(k) + " -> m" + num(c.goto1) + " guard: " +
                     q0(c.counter) + ";\n";
            edges += "  edge b" + num(k) + " -> t" + num(k) + " guard: not (" + q0(c.counter) +
                     ");\n";
            edges += "  edge t" + num(k) + " -> m" + num(c.goto2) + ";\n";
        }
    };
}

}  // namespace

BaumlModel encode_unrestricted(const CounterMachine& m) {
    require_two_counters(m);
    std::string s = kHierarchy;
    s += "class Flag { attr mark: string; }\n"
         "class Item1 { key attr id: string; }\n"
         "class Item2 { key attr id: string; }\n";
    s += kLifecycle;
    auto q0 = [](int i) { return "Item" + num(i) + ".allInstances()->isEmpty()"; };
    s += exec_activity(m, two_way_body(q0));
    s += R"(
task Init(id: string): Ready2CM {
  pre: Flag.allInstances()->isEmpty()
       and not (Ready2CM.allInstances()->exists(m2 | m2.id = id));
  post: Flag.allInstances()->exists(f | f.oclIsNew() and f.mark = id)
        and Ready2CM.allInstances()->exists(m2 | m2.oclIsNew() and m2.id = id and result = m2);
}
)";
    for (int i = 1; i <= 2; ++i) {
        std::string it = "Item" + num(i);
        s += "\ntask Inc" + num(i) + "(cm: TwoCM, id: string) {\n"
             "  pre: not (" + it + ".allInstances()->exists(i2 | i2.id = id));\n"
             "  post: " + it + ".allInstances()->exists(i2 | i2.oclIsNew() and i2.id = id);\n"
             "}\n";
        s += "\ntask Dec" + num(i) + "(cm: TwoCM, id: string) {\n"
             "  pre: " + it + ".allInstances()->exists(i2 | i2.id = id);\n"
             "  post: not (" + it + ".allInstances()->exists(i2 | i2.id = id));\n"
             "}\n";
    }
    s += kHaltTask;
    return parse_model(s);
}

BaumlModel encode_unidirectional(const CounterMachine& m) {
    require_two_counters(m);
    std::string s = kHierarchy;
    s += "class Counter { attr tag: string; }\n"
         "class Item { key attr id: string; }\n";
    s += "\nassoc hasC1 (TwoCM [0..1] cmOfC1 -- c1 [1..1] Counter);\n"
         "assoc hasC2 (TwoCM [0..1] cmOfC2 -- c2 [1..1] Counter);\n"
         "assoc contains (Counter [0..1] counter -- items [0..*] Item);\n";
    s += kLifecycle;
    auto q0 = [](int i) { return "cm.c" + num(i) + ".items->isEmpty()"; };
    s += exec_activity(m, two_way_body(q0));
    s += R"(
task Init(id: string): Ready2CM {
  pre: not (TwoCM.allInstances()->exists(m2 | m2.id = id));
  post: Ready2CM.allInstances()->exists(m2 | m2.oclIsNew() and m2.id = id and result = m2)
        and result.c1->exists(ca | ca.oclIsNew())
        and result.c2->exists(cb | cb.oclIsNew());
}
)";
    for (int i = 1; i <= 2; ++i) {
        std::string coll = "cm.c" + num(i) + ".items";
        s += "\ntask Inc" + num(i) + "(cm: TwoCM, id: string) {\n"
             "  pre: not (" + coll + "->exists(i2 | i2.id = id));\n"
             "  post: " + coll + "->exists(i2 | i2.oclIsNew() and i2.id = id);\n"
             "}\n";
        s += "\ntask Dec" + num(i) + "(cm: TwoCM, id: string) {\n"
             "  pre: " + coll + "->exists(i2 | i2.id = id);\n"
             "  post: not (" + coll + "->exists(i2 | i2.id = id));\n"
             "}\n";
    }
    s += kHaltTask;
    return parse_model(s);
}

BaumlModel encode_bidirectional(const CounterMachine& m) {
    require_two_counters(m);
    std::string s = kHierarchy;
    s += "class Item { attr tag: string; }\n";
    s += "\nassoc zeroOf (TwoCM [0..1] cmOfZero -- z [1..1] Item);\n"
         "assoc chain (Item [0..1] l -- r [0..1] Item);\n";
    s += kLifecycle;
    // counter 1 chains through r from the zero item, counter 2 through l
    auto role = [](int i) { return std::string(i == 1 ? "r" : "l"); };
    auto q0 = [&](int i) { return "cm.z." + role(i) + "->isEmpty()"; };
    auto q1 = [&](int i) {
        return "not (cm.z." + role(i) + "->isEmpty()) and cm.z." + role(i) + "." + role(i) +
               "->isEmpty()";
    };
    auto qrest = [&](int i) {
        return "not (cm.z." + role(i) + "->isEmpty()) and not (cm.z." + role(i) + "." +
               role(i) + "->isEmpty())";
    };
    auto body = [&](int k, const Command& c, std::string& nodes, std::string& edges) {
        int i = c.counter;
        nodes += "  decision b" + num(k) + ";\n";
        if (c.kind == Command::Inc) {
            nodes += "  task tz" + num(k) + " = IncZ" + num(i) + ";\n";
            nodes += "  task t" + num(k) + " = Inc" + num(i) + ";\n";
            edges += "  edge b" + num(k) + " -> tz" + num(k) + " guard: " + q0(i) + ";\n";
            edges += "  edge b" + num(k) + " -> t" + num(k) + " guard: not (" + q0(i) + ");\n";
            edges += "  edge tz" + num(k) + " -> m" + num(c.goto1) + ";\n";
            edges += "  edge t" + num(k) + " -> m" + num(c.goto1) + ";\n";
        } else {
            nodes += "  task tz" + num(k) + " = DecS" + num(i) + ";\n";
            nodes += "  task t" + num(k) + " = Dec" + num(i) + ";\n";
            edges += "  edge b" + num(k) + " -> m" + num(c.goto1) + " guard: " + q0(i) + ";\n";
            edges += "  edge b" + num(k) + " -> tz" + num(k) + " guard: " + q1(i) + ";\n";
            edges += "  edge b" + num(k) + " -> t" + num(k) + " guard: " + qrest(i) + ";\n";
            edges += "  edge tz" + num(k) + " -> m" + num(c.goto2) + ";\n";
            edges += "  edge t" + num(k) + " -> m" + num(c.goto2) + ";\n";
        }
    };
    s += exec_activity(m, body);
    s += R"(
task Init(id: string): Ready2CM {
  pre: not (TwoCM.allInstances()->exists(m2 | m2.id = id));
  post: Ready2CM.allInstances()->exists(m2 | m2.oclIsNew() and m2.id = id and result = m2)
        and result.z->exists(i | i.oclIsNew());
}
)";
    for (int i = 1; i <= 2; ++i) {
        std::string rr = role(i);
        std::string head = "cm.z." + rr;
        s += "\ntask IncZ" + num(i) + "(cm: TwoCM) {\n"
             "  pre: " + head + "->isEmpty();\n"
             "  post: " + head + "->exists(i2 | i2.oclIsNew());\n"
             "}\n";
        // the fresh item takes over the head of the chain and points at the
        // previous head; the explicit relink keeps the role 1-bounded
        s += "\ntask Inc" + num(i) + "(cm: TwoCM): Item {\n"
             "  pre: not (" + head + "->isEmpty());\n"
             "  post: let old" + rr + " = " + head + "@pre in\n"
             "        " + head + "->exists(i2 | i2.oclIsNew() and i2." + rr + " = old" + rr +
             " and result = i2)\n"
             "        and " + head + " = result;\n"
             "}\n";
        s += "\ntask DecS" + num(i) + "(cm: TwoCM) {\n"
             "  pre: not (" + head + "->isEmpty()) and " + head + "." + rr + "->isEmpty();\n"
             "  post: " + head + "->isEmpty();\n"
             "}\n";
        s += "\ntask Dec" + num(i) + "(cm: TwoCM) {\n"
             "  pre: not (" + head + "->isEmpty()) and not (" + head + "." + rr +
             "->isEmpty());\n"
             "  post: let old" + rr + " = " + head + "@pre, new" + rr + " = " + head + "." +
             rr + "@pre in\n"
             "        " + head + " = new" + rr + " and old" + rr + "." + rr + "->isEmpty();\n"
             "}\n";
    }
    s += kHaltTask;
    return parse_model(s);
}

BaumlModel encode_shared(const CounterMachine& m) {
    require_two_counters(m);
    int n = static_cast<int>(m.commands.size());
    std::string halt_pc = "\"" + num(n) + "\"";

    std::string s =
        "class Conn { key attr id: string; }\n"
        "class ReadyConn isa Conn {}\n"
        "class HaltedConn isa Conn terminal {}\n"
        "class PC { attr pos: string; }\n"
        "class Item { attr lastR: boolean; attr lastL: boolean;"
        " attr startC1: boolean; attr startC2: boolean; }\n";
    s += "\nassoc pcOf (Conn [0..*] connOfPC -- pc [1..1] PC);\n"
         "assoc rOf (Conn [0..1] connR -- r [0..1] Item);\n"
         "assoc lOf (Conn [0..1] connL -- l [0..1] Item);\n";
    s += "\nartifact Conn;\n\n"
         "statemachine Conn {\n"
         "  initial ReadyConn;\n"
         "  state ReadyConn;\n"
         "  state HaltedConn;\n"
         "  transition PRE_INITIAL -> ReadyConn on InitConn;\n"
         "  transition ReadyConn -> ReadyConn on StepConn guard: not (c.pc.pos = " + halt_pc +
         ");\n"
         "  transition ReadyConn -> HaltedConn on HaltConn guard: c.pc.pos = " + halt_pc +
         ";\n}\n";

    s += R"(
activity InitConn anchor c {
  initial n0;
  decision d1;
  task t2 = CreatePC;
  merge m3;
  task t4 = Init;
  decision d5;
  task t6 = Attach;
  merge m7;
  final n9;
  edge n0 -> d1;
  edge d1 -> t2 guard: PC.allInstances()->isEmpty();
  edge d1 -> m3 guard: not (PC.allInstances()->isEmpty());
  edge t2 -> m3;
  edge m3 -> t4;
  edge t4 -> d5;
  edge d5 -> t6 guard: Item.allInstances()->isEmpty();
  edge d5 -> m7 guard: not (Item.allInstances()->isEmpty());
  edge t6 -> m7;
  edge m7 -> n9;
}

activity HaltConn anchor c {
  initial n0;
  task t1 = Halt;
  final n9;
  edge n0 -> t1;
  edge t1 -> n9;
}
)";

    // per-counter marker attribute and the role the chain head hangs on:
    // counter 1 tops out at some conn's r, counter 2 at some conn's l
    auto last = [](int i) { return std::string(i == 1 ? "lastR" : "lastL"); };
    auto start = [](int i) { return std::string(i == 1 ? "startC1" : "startC2"); };
    auto top_role = [](int i) { return std::string(i == 1 ? "r" : "l"); };
    auto other_role = [](int i) { return std::string(i == 1 ? "l" : "r"); };
    auto pc_is = [](int k) { return "c.pc.pos = \"" + num(k) + "\""; };

    std::string nodes = "  initial n0;\n  decision d0;\n";
    std::string edges = "  edge n0 -> d0;\n";
    std::string tasks;
    for (int k = 1; k < n; ++k) {
        const Command& c = m.commands[k - 1];
        int i = c.counter;
        edges += "  edge d0 -> d" + num(k) + " guard: " + pc_is(k) + ";\n";
        nodes += "  decision d" + num(k) + ";\n";
        if (c.kind == Command::Inc) {
            std::string busy = "c.l->isEmpty() and c.r->isEmpty()";
            nodes += "  task t" + num(k) + " = IncAt" + num(k) + ";\n";
            edges += "  edge d" + num(k) + " -> t" + num(k) + " guard: " + busy + ";\n";
            edges += "  edge d" + num(k) + " -> mf guard: not (" + busy + ");\n";
            edges += "  edge t" + num(k) + " -> mf;\n";
            // a free conn adopts the old chain head and mints the new one;
            // only then does the shared program counter advance
            tasks += "\ntask IncAt" + num(k) + "(c: Conn) {\n"
                     "  pre: " + pc_is(k) + " and c.l->isEmpty() and c.r->isEmpty();\n"
                     "  post: let i = Item.allInstances()->select(i2 | i2." + last(i) +
                     " = true) in\n"
                     "        c." + other_role(i) + " = i and i." + last(i) + " = false\n"
                     "        and c." + top_role(i) + "->exists(i3 | i3.oclIsNew()"
                     " and i3.lastR = " + (i == 1 ? "true" : "false") +
                     " and i3.lastL = " + (i == 1 ? "false" : "true") +
                     "\n                        and i3.startC1 = false"
                     " and i3.startC2 = false)\n"
                     "        and c.pc.pos = \"" + num(c.goto1) + "\";\n"
                     "}\n";
        } else {
            std::string top = "c." + top_role(i);
            std::string holds_top = top + "." + last(i) + " = true";
            std::string at_zero = holds_top + " and " + top + "." + start(i) + " = true";
            std::string positive = holds_top + " and not (" + top + "." + start(i) + " = true)";
            nodes += "  task tz" + num(k) + " = GotoAt" + num(k) + ";\n";
            nodes += "  task t" + num(k) + " = DecAt" + num(k) + ";\n";
            edges += "  edge d" + num(k) + " -> tz" + num(k) + " guard: " + at_zero + ";\n";
            edges += "  edge d" + num(k) + " -> t" + num(k) + " guard: " + positive + ";\n";
            edges += "  edge d" + num(k) + " -> mf guard: not (" + holds_top + ");\n";
            edges += "  edge tz" + num(k) + " -> mf;\n";
            edges += "  edge t" + num(k) + " -> mf;\n";
            tasks += "\ntask GotoAt" + num(k) + "(c: Conn) {\n"
                     "  pre: " + pc_is(k) + " and " + at_zero + ";\n"
                     "  post: c.pc.pos = \"" + num(c.goto1) + "\";\n"
                     "}\n";
            // the holder of the chain head retires it, marks its other item
            // as the new head, and frees both of its slots
            tasks += "\ntask DecAt" + num(k) + "(c: Conn) {\n"
                     "  pre: " + pc_is(k) + " and " + positive + ";\n"
                     "  post: let itop = c." + top_role(i) + "@pre, iprev = c." +
                     other_role(i) + "@pre in\n"
                     "        iprev." + last(i) + " = true and itop." + last(i) + " = false\n"
                     "        and c.l->isEmpty() and c.r->isEmpty()\n"
                     "        and c.pc.pos = \"" + num(c.goto2) + "\";\n"
                     "}\n";
        }
    }
    // the program counter can reach the halt position while a step is
    // already in flight; let that step finish idle
    edges += "  edge d0 -> mf guard: " + pc_is(n) + ";\n";
    nodes += "  merge mf;\n  final n9;\n";
    edges += "  edge mf -> n9;\n";
    s += "\nactivity StepConn anchor c {\n" + nodes + edges + "}\n";

    s += R"(
task CreatePC() {
  post: PC.allInstances()->exists(p | p.oclIsNew() and p.pos = "1");
}

task Init(id: string): ReadyConn {
  pre: not (Conn.allInstances()->exists(c2 | c2.id = id));
  post: ReadyConn.allInstances()->exists(c2 | c2.oclIsNew() and c2.id = id and result = c2)
        and result.pc = PC.allInstances();
}

task Attach(c: Conn) {
  post: c.r->exists(s1 | s1.oclIsNew() and s1.lastR = true and s1.lastL = false
                    and s1.startC1 = true and s1.startC2 = false)
        and c.l->exists(s2 | s2.oclIsNew() and s2.lastR = false and s2.lastL = true
                        and s2.startC1 = false and s2.startC2 = true);
}

task Halt(c: Conn) {
)";
    s += "  pre: c.pc.pos = " + halt_pc + ";\n"
         "  post: not c.oclIsTypeOf(ReadyConn) and c.oclIsTypeOf(HaltedConn);\n}\n";
    s += tasks;
    return parse_model(s);
}

}  // namespace twocm
}  // namespace bauml
