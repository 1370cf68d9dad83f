#include "bauml/diag.hpp"

#include <algorithm>

namespace bauml {

const std::vector<std::string>& validation_variants() {
    static const std::vector<std::string> variants = {
        "IsaCycle",
        "DuplicateClass",
        "UnknownClass",
        "ArtifactNotDeclared",
        "ArtifactNotRoot",
        "MultipleKeys",
        "TerminalNotLeaf",
        "NoTerminalState",
        "TwoTerminalStates",
        "DuplicateAssoc",
        "BadCardinality",
        "AmbiguousRole",
        "UnknownName",
        "MachineForNonArtifact",
        "DuplicateStateMachine",
        "StatesMismatch",
        "BadInitialState",
        "BadInitialTransition",
        "UnknownState",
        "MissingStateMachine",
        "DuplicateActivity",
        "EventWithoutActivity",
        "DuplicateNode",
        "UnknownTask",
        "OneInitialNode",
        "NoFinalNode",
        "UnknownNodeRef",
        "FinalWithSuccessor",
        "DecisionWithoutBranch",
        "UnguardedDecisionBranch",
        "BadNodeFanout",
        "UnreachableNode",
        "FinalUnreachable",
        "MissingAnchorParam",
        "PreOutsidePost",
        "IsNewOutsidePost",
        "UnboundVariable",
        "DuplicateTask",
    };
    return variants;
}

Error validation_error(const std::string& variant, SourcePos pos, const std::string& msg) {
    const auto& vs = validation_variants();
    if (std::find(vs.begin(), vs.end(), variant) == vs.end())
        return Error("InternalError", pos, "unregistered validation variant '" + variant + "'");
    return Error("ValidationError." + variant, pos, msg);
}

}  // namespace bauml
