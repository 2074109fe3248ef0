#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gilliant/expr.hpp"

namespace gilliant {

/// Ordered conjunction of boolean logical expressions; empty means true.
using PathCondition = std::vector<Expr>;

/// Assignment of logical variables to concrete values.
using LogicalEnv = std::map<std::string, GilValue>;

std::string showPc(const PathCondition& pc);
std::set<std::string> pcFreeLVars(const PathCondition& pc);

/// Meaning-preserving rewriting: constant folding plus a handful of algebraic
/// identities (double negation, And/Or units, list spine projections).
/// Idempotent.
Expr simplify(const Expr& e);

/// Store substitution followed by simplification. `unbound` names the first
/// program variable missing from the store when `expr` is empty.
struct SubstStoreResult {
    std::optional<Expr> expr;
    std::string unbound;
};
SubstStoreResult substStore(const Expr& e, const std::map<std::string, Expr>& store);

/// Evaluate a logical expression (no program variables) under an environment
/// that must cover its logical variables.
std::optional<GilValue> evalUnder(const Expr& e, const LogicalEnv& env);

/// Evaluate a closed expression.
std::optional<GilValue> evalClosed(const Expr& e);

bool evalBoolUnder(const Expr& e, const LogicalEnv& env);
bool pcHoldsUnder(const PathCondition& pc, const LogicalEnv& env);

/// List expressions in spine form: a prefix of element expressions plus an
/// optional opaque remainder.
struct ListSpine {
    std::vector<Expr> elems;
    std::optional<Expr> rest;
};
std::optional<ListSpine> listSpine(const Expr& e);

enum class SatResult { Sat, Unsat, Unknown };

struct SampleHints {
    /// Variables that should default to fresh symbols (object locations)
    /// rather than numbers when otherwise unconstrained.
    std::set<std::string> locationVars;
};

/// Satisfiability and entailment over path conditions.
///
/// The decision procedure: iterated constant propagation with union-find over
/// logical variables, symbols, and literals; list spine decomposition of
/// equalities; univariate linear equation solving; disequality contradiction
/// checks; and boolean constant propagation. Sat answers always come with a
/// constructed witness; Unsat answers are proofs; everything else is Unknown.
/// An external SMT-LIB2 solver can optionally be consulted on Unknowns.
class Solver {
public:
    Solver() = default;
    explicit Solver(std::string smtCommand) : smtCommand_(std::move(smtCommand)) {}

    SatResult isSat(const PathCondition& pc) const;

    /// Sound, possibly incomplete: true only when pc ∧ ¬phi is provably
    /// unsatisfiable.
    bool entails(const PathCondition& pc, const Expr& phi) const;

    /// Up to n distinct environments, each total on `vars` and on the free
    /// variables of pc, each satisfying every conjunct. Empty when no witness
    /// can be constructed.
    std::vector<LogicalEnv> sampleModels(const PathCondition& pc, const std::set<std::string>& vars,
                                         size_t n, const SampleHints& hints = {}) const;

    const std::string& smtCommand() const { return smtCommand_; }

private:
    std::string smtCommand_;
};

/// SMT-LIB2 side door: encodes a path condition over numbers and booleans and
/// runs `command <file.smt2>`, interpreting the first sat/unsat token of the
/// output. Returns Unknown when the pc falls outside the encodable fragment
/// or the process misbehaves.
SatResult smtCheckSat(const std::string& command, const PathCondition& pc);

}  // namespace gilliant
