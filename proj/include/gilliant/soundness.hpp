#pragma once

#include "gilliant/state_ctor.hpp"

namespace gilliant {

/// Restriction on symbolic states: keep the memory and store, strengthen the
/// path condition with the other state's, and script the other record's
/// allocation decisions. Partial (IncompatibleRecords) like the record
/// restriction it builds on.
WhileSymbolicState restrictState(const WhileSymbolicState& s1, const WhileSymbolicState& s2);

struct ModelWitness {
    LogicalEnv env;
    WhileConcreteState concrete;
};

/// Sampled concretizations of a symbolic state: an environment satisfying the
/// pc, the interpreted memory, the evaluated store, and the allocation record
/// mapped through the environment (so concrete allocation replays the
/// symbolic run's decisions). Environments whose memory interpretation is
/// undefined are discarded.
std::vector<ModelWitness> modelsOf(const WhileSymbolicState& st, size_t n, const Solver& solver,
                                   const std::set<std::string>& extraVars = {});

struct DifferentialReport {
    std::string entry;
    size_t symbolicBranches = 0;
    size_t branchesChecked = 0;   // terminal branches with at least one witness
    size_t witnessesChecked = 0;
    size_t passes = 0;
    std::vector<std::string> counterexamples;  // soundness violations
    std::vector<std::string> notes;            // skipped branches, budget cuts

    bool sound() const { return counterexamples.empty(); }
};

/// The differential soundness check: for every terminal symbolic branch,
/// strengthen the initial state with the final one, sample witnesses, run the
/// concrete interpreter from each, and require the final concrete
/// configuration to be modelled by the final symbolic one under the witness
/// environment.
DifferentialReport differentialCheck(const AnnotatedProgram& prog, const std::string& entry,
                                     size_t modelsPerBranch, const RunLimits& limits,
                                     const Solver& solver);

}  // namespace gilliant
