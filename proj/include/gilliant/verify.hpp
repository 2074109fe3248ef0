#pragma once

#include "gilliant/pred_state.hpp"

namespace gilliant {

using VerifyModel = PredModel<WhileSymbolicModel>;
using VerifyState = VerifyModel::State;
using VerifyConfig = Config<VerifyModel>;

struct VerifyIssue {
    enum class Kind { BranchFailed, PostConsumeFailed, BudgetExceeded, UnknownAnnotation };
    Kind kind;
    std::string message;
    std::vector<std::string> trace;
};

struct VerificationResult {
    std::string proc;
    int specIndex = 0;
    bool verified = false;
    size_t branchesDischarged = 0;
    std::vector<VerifyIssue> issues;

    std::string statusLine() const;
};

/// Executes the verification semantics: logical commands (fold, unfold, spec
/// call) interpreted over predicate states, everything else delegated to the
/// plain interpreter.
class Verifier {
public:
    Verifier(const AnnotatedProgram& prog, Solver solver, RunLimits limits = {});

    /// The extended small step. Definition existentials in unfold and
    /// postcondition existentials in spec calls are instantiated with fresh
    /// #u_* variables.
    std::vector<VerifyConfig> stepLogical(const VerifyConfig& cfg);

    /// Check one specification: produce the pre onto an empty symbolic state,
    /// run the body (spec calls allowed), and discharge every terminal branch
    /// against the post and return expression. The post-consume residual must
    /// be empty (no leaked resource).
    VerificationResult verifyProc(const std::string& f, int specIndex);

    std::vector<VerificationResult> verifyAll();

    const VerifyModel& model() const { return model_; }
    const AnnotatedProgram& program() const { return prog_; }

private:
    std::map<std::string, Expr> freshBindings(const std::set<std::string>& needed,
                                              const std::map<std::string, Expr>& theta);

    const AnnotatedProgram& prog_;
    VerifyModel model_;
    RunLimits limits_;
    long unfoldCounter_ = 0;
};

}  // namespace gilliant
