#include "bauml/cli.hpp"

#include <CLI11.hpp>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bauml/analysis.hpp"
#include "bauml/diag.hpp"
#include "bauml/ground.hpp"
#include "bauml/mucheck.hpp"
#include "bauml/model_io.hpp"
#include "bauml/mulp.hpp"
#include "bauml/twocm.hpp"

namespace bauml::cli {
namespace {

bool color_enabled(const std::ostream& out) {
    const char* env = std::getenv("BAUMLV_COLOR");
    if (env && std::string(env) == "0") return false;
    return &out == &std::cout && isatty(1);
}

std::string paint(const std::ostream& out, const char* code, const std::string& text) {
    if (!color_enabled(out)) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string green(const std::ostream& o, const std::string& t) { return paint(o, "32", t); }
std::string red(const std::ostream& o, const std::string& t) { return paint(o, "31", t); }
std::string yellow(const std::ostream& o, const std::string& t) { return paint(o, "33", t); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw Error("IoError", "cannot write " + out_path);
    f << text;
}

// ---------------------------------------------------------------------------
// Shared option bundles
// ---------------------------------------------------------------------------

struct GroundFlags {
    std::string mode;  // "", "thm3", "thm6"
    unsigned instances = 1;
    int budget = 8;
    std::string initial_db;
    size_t max_states = 1000000;

    CLI::Option* mode_opt = nullptr;
    CLI::Option* instances_opt = nullptr;
    CLI::Option* budget_opt = nullptr;

    void attach(CLI::App* app) {
        mode_opt = app->add_option("--mode", mode, "grounding regime: thm3 or thm6")
                       ->check(CLI::IsMember({"thm3", "thm6"}));
        instances_opt =
            app->add_option("--instances", instances, "artifact instance bound (thm6)");
        budget_opt = app->add_option("--budget", budget, "fresh-value budget");
        app->add_option("--initial-db", initial_db, "initial database file");
        app->add_option("--max-states", max_states, "state exploration cap");
    }

    GroundOptions options(const BaumlModel& m) const {
        GroundOptions o;
        o.mode = mode == "thm3" ? GroundOptions::Thm3 : GroundOptions::Thm6;
        o.instance_bound = static_cast<int>(instances);
        o.fresh_budget = budget;
        o.max_states = max_states;
        if (!initial_db.empty()) o.initial_db = parse_initial_db_file(m, initial_db);
        return o;
    }
};

void print_report(const AnalysisReport& r, std::ostream& out) {
    out << "navigational: " << (r.navigational.navigational ? "yes" : "no") << "\n";
    for (const std::string& w : r.navigational.witnesses) out << "  breaks at: " << w << "\n";
    out << "directionality: "
        << (r.directionality.kind == Directionality::Unidirectional ? "unidirectional"
                                                                    : "bidirectional")
        << "\n";
    if (!r.directionality.cycle.empty()) {
        out << "  cycle:";
        for (const std::string& n : r.directionality.cycle) out << " " << n;
        out << "\n";
    }
    if (r.cardinality.bounded)
        out << "cardinality: bounded (N = " << r.cardinality.max_upper << ")\n";
    else
        out << "cardinality: unbounded (role " << r.cardinality.unbounded_role << ")\n";
    switch (r.shared_instances.kind) {
        case SharedInstances::None: out << "shared instances: none\n"; break;
        case SharedInstances::ReadOnlyOnly:
            out << "shared instances: read-only only\n";
            break;
        case SharedInstances::ReadWrite:
            out << "shared instances: read-write (" << r.shared_instances.witness << ")\n";
            break;
    }
    if (!r.partition.read_only.empty()) {
        out << "read-only:";
        for (const std::string& n : r.partition.read_only) out << " " << n;
        out << "\n";
    }
    out << "verdict: " << verdict_name(r.verdict) << "\n";
    out << "  " << r.citation << "\n";
    if (r.bound)
        out << "object bound: " << r.bound->system_bound << " (per instance "
            << r.bound->per_instance << ")\n";
}

twocm::CounterMachine random_machine(unsigned seed, int n) {
    std::mt19937 rng(seed);
    if (n < 1) throw Error("BadInput", "--random needs a positive command count");
    std::uniform_int_distribution<int> kind(0, 1);
    std::uniform_int_distribution<int> counter(1, 2);
    std::uniform_int_distribution<int> target(1, n);
    twocm::CounterMachine m;
    for (int k = 1; k < n; ++k) {
        twocm::Command c;
        if (kind(rng) == 0) {
            c.kind = twocm::Command::Inc;
            c.counter = counter(rng);
            c.goto1 = target(rng);
        } else {
            c.kind = twocm::Command::CDec;
            c.counter = counter(rng);
            c.goto1 = target(rng);
            c.goto2 = target(rng);
        }
        m.commands.push_back(c);
    }
    m.commands.push_back(twocm::Command{twocm::Command::Halt, 0, 0, 0});
    twocm::validate(m);
    return m;
}

BaumlModel encode_table(const twocm::CounterMachine& m, int table) {
    switch (table) {
        case 1: return twocm::encode_unrestricted(m);
        case 2: return twocm::encode_unidirectional(m);
        case 3: return twocm::encode_bidirectional(m);
        case 4: return twocm::encode_shared(m);
    }
    throw Error("BadInput", "--table must be 1..4");
}

// ---------------------------------------------------------------------------
// Subcommand drivers
// ---------------------------------------------------------------------------

Outcome do_analyze(const std::string& path, bool json, std::optional<unsigned> instances,
                   unsigned b_init, std::ostream& out) {
    BaumlModel m = parse_model_file(path);
    AnalysisOptions opt;
    opt.b_init = b_init;
    opt.instance_bound = instances;
    AnalysisReport r = analyze(m, opt);
    if (json) {
        out << report_to_json(r) << "\n";
    } else {
        out << "model: " << path << "\n";
        print_report(r, out);
    }
    return Outcome::Ok;
}

Outcome do_verify(const std::string& path, bool termination, const std::string& property_path,
                  const GroundFlags& g, bool explicit_escape, bool json, std::ostream& out,
                  std::ostream& err) {
    BaumlModel m = parse_model_file(path);
    AnalysisOptions aopt;
    if (g.instances_opt->count()) aopt.instance_bound = g.instances;
    AnalysisReport report = analyze(m, aopt);

    bool decidable = report.verdict == Verdict::DecidableThm3 ||
                     report.verdict == Verdict::DecidableThm6IfInstanceBounded;
    if (!decidable && !explicit_escape) {
        err << "refusing to verify: model classifies as " << verdict_name(report.verdict)
            << "\n  " << report.citation << "\n"
            << "  pass --mode thm6 --instances <b> --budget <k> to bound the search\n";
        return Outcome::Undecidable;
    }

    GroundOptions gopt = g.options(m);
    if (!g.mode_opt->count())
        gopt.mode = report.verdict == Verdict::DecidableThm3 ? GroundOptions::Thm3
                                                             : GroundOptions::Thm6;
    MuPtr phi = termination ? mulp::termination_property(m)
                            : mulp::parse_property(slurp(property_path));

    TransitionSystem ts;
    try {
        ts = ground(m, gopt);
    } catch (const Error& e) {
        if (e.kind() == "BudgetExceeded" || e.kind() == "StateLimit") {
            err << "verification inconclusive: " << e.kind() << ": " << e.what() << "\n";
            return Outcome::Unknown;
        }
        throw;
    }

    CheckResult r = check(ts, phi);
    if (json) {
        std::ostringstream j;
        j << "{\"verdict\": \"" << (r.holds ? "HOLDS" : "VIOLATED") << "\", \"states\": "
          << ts.states.size();
        if (!r.holds && !r.loop.empty()) {
            j << ", \"witness\": " << r.witness << ", \"prefix\": [";
            for (size_t i = 0; i < r.prefix.size(); ++i) j << (i ? ", " : "") << r.prefix[i];
            j << "], \"loop\": [";
            for (size_t i = 0; i < r.loop.size(); ++i) j << (i ? ", " : "") << r.loop[i];
            j << "]";
        }
        j << "}";
        out << j.str() << "\n";
    } else {
        out << "explored " << ts.states.size() << " states\n";
        if (r.holds) {
            out << green(out, "property holds") << "\n";
        } else {
            out << red(out, "property violated") << "\n";
            if (!r.loop.empty()) {
                out << "counterexample (instance " << r.witness << " never finishes):\n";
                out << "  prefix:";
                for (size_t s : r.prefix) out << " " << s;
                out << "\n  loop:";
                for (size_t s : r.loop) out << " " << s;
                out << "\n";
            }
        }
    }
    return r.holds ? Outcome::Ok : Outcome::Violated;
}

Outcome do_encode(const std::string& machine_path, bool random, unsigned seed, int random_n,
                  int table, const std::string& out_path, std::ostream& out) {
    twocm::CounterMachine m = random ? random_machine(seed, random_n)
                                     : twocm::parse_machine_file(machine_path);
    emit(serialize_model(encode_table(m, table)), out_path, out);
    return Outcome::Ok;
}

Outcome do_run(const std::string& machine_path, long d1, long d2, long max_steps, bool trace,
               bool normalize, bool json, std::ostream& out) {
    twocm::CounterMachine m = twocm::parse_machine_file(machine_path);
    std::vector<long> input{d1, d2};
    if (normalize) {
        m = twocm::normalize_input(m, d1, d2);
        input = {0, 0};
    }
    twocm::RunResult r = twocm::run(m, input, max_steps, trace);
    if (json) {
        std::ostringstream j;
        j << "{\"halted\": " << (r.halted ? "true" : "false") << ", \"steps\": " << r.steps
          << ", \"counters\": [";
        for (size_t i = 0; i < r.final_counters.size(); ++i)
            j << (i ? ", " : "") << r.final_counters[i];
        j << "], \"max_counter\": " << r.max_counter;
        if (trace) {
            j << ", \"trace\": [";
            for (size_t i = 0; i < r.trace.size(); ++i) {
                j << (i ? ", " : "") << "{\"pc\": " << r.trace[i].first << ", \"counters\": [";
                for (size_t k = 0; k < r.trace[i].second.size(); ++k)
                    j << (k ? ", " : "") << r.trace[i].second[k];
                j << "]}";
            }
            j << "]";
        }
        j << "}";
        out << j.str() << "\n";
    } else {
        if (trace)
            for (const auto& [pc, counters] : r.trace) {
                out << "  pc " << pc << " |";
                for (long v : counters) out << " " << v;
                out << "\n";
            }
        if (r.halted)
            out << green(out, "HALTED") << " after " << r.steps << " steps\n";
        else
            out << yellow(out, "RUNNING") << " at step limit " << max_steps << "\n";
    }
    return r.halted ? Outcome::Ok : Outcome::Unknown;
}

Outcome do_ground(const std::string& path, const GroundFlags& g, bool json,
                  const std::string& out_path, std::ostream& out, std::ostream& err) {
    BaumlModel m = parse_model_file(path);
    TransitionSystem ts;
    try {
        ts = ground(m, g.options(m));
    } catch (const Error& e) {
        if (e.kind() == "BudgetExceeded" || e.kind() == "StateLimit") {
            err << "grounding inconclusive: " << e.kind() << ": " << e.what() << "\n";
            return Outcome::Unknown;
        }
        throw;
    }
    if (json) {
        emit(ts_to_json(ts) + "\n", out_path, out);
    } else {
        size_t deadlocks = 0;
        for (bool d : ts.deadlock) deadlocks += d;
        out << "states: " << ts.states.size() << "\n";
        size_t edges = 0;
        for (const auto& s : ts.succ) edges += s.size();
        out << "edges: " << edges << "\n";
        out << "stable states: " << deadlocks << "\n";
    }
    return Outcome::Ok;
}

}  // namespace

int exit_code(Outcome o) {
    switch (o) {
        case Outcome::Ok: return 0;
        case Outcome::Violated: return 1;
        case Outcome::Unknown: return 2;
        case Outcome::Undecidable: return 3;
        case Outcome::UsageError: return 4;
    }
    return 4;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"verifier toolkit for artifact-centric process models"};
    app.require_subcommand(1);

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "classify a model's decidability axes");
    std::string a_model;
    bool a_json = false;
    unsigned a_instances = 0, a_binit = 0;
    analyze_cmd->add_option("model", a_model, "model file")->required();
    analyze_cmd->add_flag("--json", a_json, "machine-readable report");
    auto* a_inst_opt =
        analyze_cmd->add_option("--instances", a_instances, "declared instance bound");
    analyze_cmd->add_option("--b-init", a_binit, "objects in the initial database");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "model-check a property after grounding");
    std::string v_model, v_property;
    bool v_termination = false, v_json = false;
    GroundFlags v_ground;
    verify_cmd->add_option("model", v_model, "model file")->required();
    auto* v_term_opt =
        verify_cmd->add_flag("--termination", v_termination, "check artifact termination");
    auto* v_prop_opt =
        verify_cmd->add_option("--property", v_property, "property file");
    v_term_opt->excludes(v_prop_opt);
    verify_cmd->add_flag("--json", v_json, "machine-readable verdict");
    v_ground.attach(verify_cmd);

    // encode-2cm
    auto* encode_cmd = app.add_subcommand("encode-2cm", "encode a counter machine as a model");
    std::string e_machine, e_out;
    int e_table = 0, e_random_n = 6;
    unsigned e_seed = 1;
    bool e_random = false;
    encode_cmd->add_option("machine", e_machine, "machine file (.cm2)");
    encode_cmd->add_option("--table", e_table, "encoding table 1..4")
        ->required()
        ->check(CLI::Range(1, 4));
    encode_cmd->add_flag("--random", e_random, "generate a random machine instead");
    encode_cmd->add_option("--seed", e_seed, "random generator seed");
    encode_cmd->add_option("--size", e_random_n, "random machine command count");
    encode_cmd->add_option("-o,--output", e_out, "write the model here");

    // run-2cm
    auto* run_cmd = app.add_subcommand("run-2cm", "interpret a counter machine");
    std::string r_machine;
    long r_d1 = 0, r_d2 = 0, r_steps = 10000;
    bool r_trace = false, r_normalize = false, r_json = false;
    run_cmd->add_option("machine", r_machine, "machine file (.cm2)")->required();
    run_cmd->add_option("--d1", r_d1, "initial value of counter 1");
    run_cmd->add_option("--d2", r_d2, "initial value of counter 2");
    run_cmd->add_option("--max-steps", r_steps, "step budget");
    run_cmd->add_flag("--trace", r_trace, "print every configuration");
    run_cmd->add_flag("--normalize", r_normalize, "fold the input into the program");
    run_cmd->add_flag("--json", r_json, "machine-readable result");

    // ground
    auto* ground_cmd = app.add_subcommand("ground", "enumerate the reachable state space");
    std::string g_model, g_out;
    bool g_json = false;
    GroundFlags g_ground;
    ground_cmd->add_option("model", g_model, "model file")->required();
    ground_cmd->add_flag("--json", g_json, "dump the transition system");
    ground_cmd->add_option("-o,--output", g_out, "write the dump here");
    g_ground.attach(ground_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code(Outcome::Ok);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code(Outcome::UsageError);
    }

    try {
        Outcome o = Outcome::UsageError;
        if (analyze_cmd->parsed()) {
            std::optional<unsigned> inst;
            if (a_inst_opt->count()) inst = a_instances;
            o = do_analyze(a_model, a_json, inst, a_binit, out);
        } else if (verify_cmd->parsed()) {
            if (!v_termination && v_property.empty())
                throw Error("Usage", "verify needs --termination or --property");
            bool escape = v_ground.mode_opt->count() && v_ground.mode == "thm6" &&
                          v_ground.instances_opt->count() && v_ground.budget_opt->count();
            o = do_verify(v_model, v_termination, v_property, v_ground, escape, v_json, out,
                          err);
        } else if (encode_cmd->parsed()) {
            if (!e_random && e_machine.empty())
                throw Error("Usage", "encode-2cm needs a machine file or --random");
            o = do_encode(e_machine, e_random, e_seed, e_random_n, e_table, e_out, out);
        } else if (run_cmd->parsed()) {
            o = do_run(r_machine, r_d1, r_d2, r_steps, r_trace, r_normalize, r_json, out);
        } else if (ground_cmd->parsed()) {
            o = do_ground(g_model, g_ground, g_json, g_out, out, err);
        }
        return exit_code(o);
    } catch (const Error& e) {
        err << "error [" << e.kind() << "]: " << e.what() << "\n";
        return exit_code(Outcome::UsageError);
    }
}

}  // namespace bauml::cli
