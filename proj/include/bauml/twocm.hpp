#ifndef BAUML_TWOCM_HPP
#define BAUML_TWOCM_HPP

#include <string>
#include <vector>

#include "bauml/model.hpp"

namespace bauml {
namespace twocm {

// Counter-machine command; indices are 1-based into the command list.
struct Command {
    enum Kind { Inc, CDec, Halt };
    Kind kind = Halt;
    int counter = 0;   // Inc/CDec
    int goto1 = 0;     // Inc: next command; CDec: zero branch
    int goto2 = 0;     // CDec: decrement branch
};

// Deterministic machine over `counters` non-negative counters. The last
// command is always Halt; every goto index stays inside the program.
struct CounterMachine {
    int counters = 2;
    std::vector<Command> commands;
};

// Throws Error("BadMachine") when the invariants above fail.
void validate(const CounterMachine& m);

// One command per line: `k: INC c GOTO k'`, `k: DEC c ZERO k' ELSE k''`,
// `k: HALT`. `#` starts a comment. Throws SyntaxError / BadMachine.
CounterMachine parse_machine(const std::string& text);
CounterMachine parse_machine_file(const std::string& path);
std::string serialize_machine(const CounterMachine& m);

struct RunResult {
    bool halted = false;
    long steps = 0;  // commands executed before reaching Halt
    // (pc, counter values) before each step plus the final configuration.
    std::vector<std::pair<int, std::vector<long>>> trace;
    std::vector<long> final_counters;
    long max_counter = 0;  // largest value any counter reaches
};

// Exact small-step simulation from pc = 1. Stops RUNNING (halted = false)
// once step_limit commands executed. Throws Error("BadInput") when the
// input length or sign is wrong.
RunResult run(const CounterMachine& m, const std::vector<long>& input, long step_limit,
              bool want_trace = false);

// Folds a 2-counter input into the program: d1 increments of counter 1,
// then d2 of counter 2, original gotos shifted by d1+d2. Running the
// result on <0,0> mirrors running `m` on <d1,d2>.
CounterMachine normalize_input(const CounterMachine& m, long d1, long d2);

// Reductions from 2-counter halting, one per model class. Each output is a
// single-artifact model whose instance reaches its terminal state iff the
// machine halts on <0,0>.
BaumlModel encode_unrestricted(const CounterMachine& m);    // free creation/deletion
BaumlModel encode_unidirectional(const CounterMachine& m);  // unbounded item bags
BaumlModel encode_bidirectional(const CounterMachine& m);   // 1-bounded linked chains
BaumlModel encode_shared(const CounterMachine& m);          // chains shared across instances

}  // namespace twocm
}  // namespace bauml

#endif
