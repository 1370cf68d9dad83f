#ifndef BAUML_MUCHECK_HPP
#define BAUML_MUCHECK_HPP

#include <functional>
#include <vector>

#include "bauml/ground.hpp"
#include "bauml/mulp.hpp"

namespace bauml {

struct CheckResult {
    bool holds = false;
    // Filled for a failed termination property: a run witnessing an instance
    // that never reaches its terminal state. `prefix` leads from the initial
    // state to the loop entry; `loop` repeats forever; `witness` is the
    // stuck instance's identifier in the first loop state. States are stored
    // as canonical representatives, so follow TransitionSystem::step_oid to
    // trace the instance through the run.
    std::vector<size_t> prefix;
    std::vector<size_t> loop;
    Oid witness = 0;
};

// Fixpoint evaluation of a closed property over the grounded system. Least
// fixpoints iterate up from the empty extension, greatest down from the
// full one; quantifiers and modal guards range over each state's active
// domain. Throws OpenFormula, NonMonotone.
CheckResult check(const TransitionSystem& ts, const MuPtr& phi);

// Plain breadth-first reachability of a goal state, used to cross-validate
// the fixpoint engine.
bool check_reachability_oracle(const TransitionSystem& ts,
                               const std::function<bool(const Configuration&)>& goal);

}  // namespace bauml

#endif
