#include "gilliant/verify.hpp"

namespace gilliant {

namespace {

std::map<std::string, Expr> identityTheta(const Assertion& a) {
    std::map<std::string, Expr> theta;
    for (const std::string& lv : a.freeLVars()) theta.emplace(lv, Expr::lvar(lv));
    return theta;
}

}  // namespace

std::string VerificationResult::statusLine() const {
    std::string out = proc + " spec " + std::to_string(specIndex) + ": ";
    out += verified ? "Verified" : "Failed";
    out += " (" + std::to_string(branchesDischarged) + " branch(es))";
    return out;
}

Verifier::Verifier(const AnnotatedProgram& prog, Solver solver, RunLimits limits)
    : prog_(prog),
      model_(WhileSymbolicModel(std::move(solver)), CorePredInterp::forWhile()),
      limits_(limits) {}

// Existentials are instantiated as #u_<instance>_<name>: one instance number
// per unfold or spec-call, so proof scripts can refer to them predictably.
std::map<std::string, Expr> Verifier::freshBindings(const std::set<std::string>& needed,
                                                    const std::map<std::string, Expr>& theta) {
    std::map<std::string, Expr> out = theta;
    bool numbered = false;
    long instance = 0;
    for (const std::string& lv : needed) {
        if (out.count(lv)) continue;
        if (!numbered) {
            instance = unfoldCounter_++;
            numbered = true;
        }
        out.emplace(lv, Expr::lvar("#u_" + std::to_string(instance) + "_" + lv.substr(1)));
    }
    return out;
}

std::vector<VerifyConfig> Verifier::stepLogical(const VerifyConfig& cfg) {
    const GilProc* proc = cfg.prog->find(cfg.top().proc);
    if (!proc || cfg.idx < 0 || static_cast<size_t>(cfg.idx) >= proc->body.size())
        throw EngineError(EngineError::Kind::BadTarget, "command index out of range");
    const GilCommand& cmd = proc->body[static_cast<size_t>(cfg.idx)];
    if (!cmd.isLogical()) return step(model_, cfg);

    auto evalOr = [&](const Expr& e) {
        auto v = model_.ee(cfg.state, e);
        if (!v)
            throw EngineError(EngineError::Kind::ExprEval, "cannot evaluate " + e.show());
        return *v;
    };

    auto advanced = [&](VerifyState st) {
        VerifyConfig next = cfg;
        next.state = std::move(st);
        next.idx = cfg.idx + 1;
        next.steps = cfg.steps + 1;
        auto node = std::make_shared<TraceNode>();
        node->parent = cfg.trace;
        node->proc = cfg.top().proc;
        node->idx = cfg.idx;
        node->cmd = cmd.show();
        next.trace = std::move(node);
        return next;
    };

    std::vector<VerifyConfig> out;

    if (cmd.kind == GilCommand::Kind::Fold) {
        const PredicateDef* def = prog_.findPred(cmd.pred);
        if (!def)
            throw EngineError(EngineError::Kind::UnknownPredicate,
                              "unknown predicate " + cmd.pred);
        if (cmd.index < 0 || static_cast<size_t>(cmd.index) >= def->defs.size())
            throw EngineError(EngineError::Kind::UnknownPredicate,
                              cmd.pred + " has no definition " + std::to_string(cmd.index));
        Expr headVal = evalOr(cmd.e);
        std::map<std::string, Expr> theta;
        theta.emplace(def->param, headVal);
        for (const auto& [lv, be] : cmd.bindings) theta.emplace(lv, evalOr(be));

        const Assertion& body = def->defs[static_cast<size_t>(cmd.index)];
        auto consumed = consume(model_, cfg.state, body, theta);
        if (consumed.error)
            throw EngineError(EngineError::Kind::MissingResource,
                              "fold " + cmd.pred + ": " + consumed.error->what);
        for (const VerifyState& st : consumed.states) {
            auto res = model_.ea("setP", st, model_.packPredArg(cmd.pred, headVal));
            if (res.error) throw *res.error;
            for (auto& [next, _] : res.branches) out.push_back(advanced(std::move(next)));
        }
        return out;
    }

    if (cmd.kind == GilCommand::Kind::Unfold) {
        const PredicateDef* def = prog_.findPred(cmd.pred);
        if (!def)
            throw EngineError(EngineError::Kind::UnknownPredicate,
                              "unknown predicate " + cmd.pred);
        Expr headVal = evalOr(cmd.e);
        auto res = model_.ea("getP", cfg.state, model_.packPredArg(cmd.pred, headVal));
        if (res.error)
            throw EngineError(EngineError::Kind::MissingResource,
                              "unfold " + cmd.pred + ": " + res.error->what());
        for (auto& [st, _] : res.branches) {
            for (const Assertion& alt : def->defs) {
                std::map<std::string, Expr> theta;
                theta.emplace(def->param, headVal);
                theta = freshBindings(alt.freeLVars(), theta);
                for (VerifyState& next : produce(model_, st, alt, theta))
                    out.push_back(advanced(std::move(next)));
            }
        }
        return out;
    }

    // spec call
    Expr fnVal = evalOr(cmd.e);
    auto fname = model_.procTarget(cfg.state, fnVal);
    if (!fname)
        throw EngineError(EngineError::Kind::ExprEval,
                          "spec call target does not denote a procedure: " + cmd.e.show());
    const Spec* spec = prog_.findSpec(*fname, cmd.index);
    if (!spec)
        throw EngineError(EngineError::Kind::UnknownSpec,
                          *fname + " has no specification " + std::to_string(cmd.index));
    Expr argVal = evalOr(cmd.e2);
    std::map<std::string, Expr> theta;
    theta.emplace(spec->param, argVal);
    for (const auto& [lv, be] : cmd.bindings) theta.emplace(lv, evalOr(be));

    auto consumed = consume(model_, cfg.state, spec->pre, theta);
    if (consumed.error)
        throw EngineError(EngineError::Kind::MissingResource,
                          "spec call " + *fname + ": precondition: " + consumed.error->what);
    for (const VerifyState& st : consumed.states) {
        std::set<std::string> needed = spec->post.freeLVars();
        spec->ret.collectLVars(needed);
        auto thetaPost = freshBindings(needed, theta);
        for (VerifyState& next : produce(model_, st, spec->post, thetaPost)) {
            auto rv = model_.evalWithSubst(next, spec->ret, thetaPost);
            if (!rv)
                throw EngineError(EngineError::Kind::ExprEval,
                                  "cannot evaluate spec return " + spec->ret.show());
            out.push_back(advanced(cmd.x == "_" ? std::move(next)
                                                : model_.setVar(std::move(next), cmd.x, *rv)));
        }
    }
    return out;
}

VerificationResult Verifier::verifyProc(const std::string& f, int specIndex) {
    VerificationResult result;
    result.proc = f;
    result.specIndex = specIndex;

    const Spec* spec = prog_.findSpec(f, specIndex);
    const GilProc* proc = prog_.prog.find(f);
    if (!spec || !proc) {
        result.issues.push_back({VerifyIssue::Kind::UnknownAnnotation,
                                 "no such procedure or specification", {}});
        return result;
    }

    // theta0: the parameter and every logical variable of the pre bind to
    // fresh logical variables; identity naming keeps spec variables usable in
    // the body's logical commands
    std::map<std::string, Expr> theta0 = identityTheta(spec->pre);
    Expr paramVar = Expr::lvar("#" + spec->param);
    theta0.emplace(spec->param, paramVar);

    VerifyState init;
    init.inner.store.emplace(spec->param, paramVar);

    std::vector<VerifyState> starts;
    try {
        starts = produce(model_, init, spec->pre, theta0);
    } catch (const EngineError& e) {
        result.issues.push_back(
            {VerifyIssue::Kind::BranchFailed, std::string("producing pre: ") + e.what(), {}});
        return result;
    }
    if (starts.empty()) {
        result.issues.push_back({VerifyIssue::Kind::BranchFailed,
                                 "precondition is unsatisfiable", {}});
        return result;
    }

    for (const VerifyState& st : starts) {
        VerifyConfig cfg = initialConfig<VerifyModel>(prog_.prog, f, st);
        auto res = runWith(
            model_, cfg, limits_,
            [this](const VerifyModel&, const VerifyConfig& c) { return stepLogical(c); });

        for (const auto& issue : res.issues) {
            VerifyIssue::Kind kind = issue.kind == BranchIssue<VerifyModel>::Kind::Error
                                         ? VerifyIssue::Kind::BranchFailed
                                         : VerifyIssue::Kind::BudgetExceeded;
            result.issues.push_back({kind, issue.message, materializeTrace(issue.cfg.trace)});
        }

        for (const auto& fin : res.finals) {
            if (fin.outcome.kind == Outcome<Expr>::Kind::Fail) {
                result.issues.push_back({VerifyIssue::Kind::BranchFailed,
                                         "branch fails with " +
                                             model_.showValue(fin.outcome.value),
                                         materializeTrace(fin.trace)});
                continue;
            }
            Expr returned = simplify(fin.outcome.value);

            // bind a post existential named by the return expression
            auto thetaPost = theta0;
            if (spec->ret.isLVar() && !thetaPost.count(spec->ret.varName()))
                thetaPost.emplace(spec->ret.varName(), returned);

            auto consumed = consume(model_, fin.state, spec->post, thetaPost);
            if (consumed.error) {
                result.issues.push_back({VerifyIssue::Kind::PostConsumeFailed,
                                         "consuming post: " + consumed.error->what,
                                         materializeTrace(fin.trace)});
                continue;
            }
            bool discharged = false;
            std::string why = "no residual state discharges the post";
            for (const VerifyState& rest : consumed.states) {
                if (!rest.inner.memory.cells().empty() || !rest.preds.empty()) {
                    why = "residual resource after consuming the post: " +
                          model_.showState(rest);
                    continue;
                }
                auto rv = model_.evalWithSubst(rest, spec->ret, thetaPost);
                if (!rv) {
                    why = "cannot evaluate the return expression";
                    continue;
                }
                if (!model_.inner().solver().entails(
                        rest.inner.pc, Expr::binop(BinOpKind::Eq, returned, *rv))) {
                    why = "return value " + returned.show() + " is not entailed to equal " +
                          rv->show();
                    continue;
                }
                discharged = true;
                break;
            }
            if (discharged) {
                ++result.branchesDischarged;
            } else {
                result.issues.push_back({VerifyIssue::Kind::PostConsumeFailed, why,
                                         materializeTrace(fin.trace)});
            }
        }
    }

    result.verified = result.issues.empty();
    return result;
}

std::vector<VerificationResult> Verifier::verifyAll() {
    std::vector<VerificationResult> out;
    for (const auto& [proc, specs] : prog_.specs)
        for (size_t i = 0; i < specs.size(); ++i)
            out.push_back(verifyProc(proc, static_cast<int>(i)));
    return out;
}

}  // namespace gilliant
