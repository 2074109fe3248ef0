#include "gilliant/biabduce.hpp"

#include "gilliant/interp.hpp"

namespace gilliant {

ActionOutcome<BiState, Expr> BiModel::ea(const std::string& action, const State& st,
                                         const Value& v) const {
    ActionOutcome<State, Value> out;
    auto res = inner_.ea(action, st.inner, v);
    if (!res.fixes.empty()) {
        // missing resource with fixes: extend the state with each fix's
        // footprint, retry, and record the fix in the anti-frame
        for (const Fix& fix : res.fixes) {
            std::vector<VerifyState> produced;
            try {
                produced = produce(inner_, st.inner, fix, {});
            } catch (const EngineError& e) {
                throw EngineError(EngineError::Kind::Internal,
                                  "fix application failed: " + std::string(e.what()));
            }
            for (const VerifyState& pst : produced) {
                auto retry = inner_.ea(action, pst, v);
                if (retry.error || retry.branches.empty())
                    throw EngineError(EngineError::Kind::Internal,
                                      "action still fails after its fix: " + fix.show());
                for (auto& [istate, val] : retry.branches) {
                    State next = st;
                    next.inner = std::move(istate);
                    next.antiFrame = Assertion::star(st.antiFrame, fix);
                    out.branches.emplace_back(std::move(next), std::move(val));
                }
            }
        }
        return out;
    }
    out.error = std::move(res.error);
    for (auto& [istate, val] : res.branches) {
        State next = st;
        next.inner = std::move(istate);
        out.branches.emplace_back(std::move(next), std::move(val));
    }
    return out;
}

std::vector<std::pair<BiState, Expr>> BiModel::assume(const State& st, const Value& v) const {
    std::vector<std::pair<State, Value>> out;
    Expr cond = simplify(v);
    for (auto& [istate, val] : inner_.assume(st.inner, v)) {
        State next = st;
        next.inner = std::move(istate);
        if (!cond.isLitBool(true))
            next.antiFrame = Assertion::star(st.antiFrame, Assertion::pure(cond));
        out.emplace_back(std::move(next), std::move(val));
    }
    return out;
}

std::string SynthesizedSpec::show() const {
    std::string head = kind == Kind::Success ? "success" : "bug-candidate";
    std::string out = "[" + head + "] { " + pre.show() + " } " + proc + " { " + post.show() +
                      " ; " + ret.show() + " }";
    if (!note.empty()) out += "  // " + note;
    return out;
}

namespace {

Expr cellTriple(const wl::SymCell& c) {
    return simplify(Expr::binop(
        BinOpKind::Cons, c.loc,
        Expr::binop(BinOpKind::Cons, Expr::lit(GilValue::str(c.prop)),
                    Expr::binop(BinOpKind::Cons, c.val, Expr::lit(GilValue::list({}))))));
}

Assertion buildPre(const std::string& param, const BiState& st) {
    std::vector<Assertion> parts;
    parts.push_back(Assertion::pure(
        Expr::binop(BinOpKind::Eq, Expr::pvar(param), Expr::lvar("#" + param))));
    std::set<std::string> purSeen;
    for (const Assertion& p : st.antiFrame.flatten()) {
        if (p.kind() == Assertion::Kind::Pure) {
            if (!purSeen.insert(simplify(p.expr()).show()).second) continue;
        }
        parts.push_back(p);
    }
    // pc conjuncts not already present as pure parts (action branch choices)
    for (const Expr& c : st.inner.inner.pc) {
        Expr s = simplify(c);
        if (purSeen.insert(s.show()).second) parts.push_back(Assertion::pure(s));
    }
    return Assertion::starAll(parts);
}

Assertion buildPost(const BiState& st) {
    std::vector<Assertion> parts;
    for (const wl::SymCell& c : st.inner.inner.memory.cells())
        parts.push_back(Assertion::core(wl::kCellPred, cellTriple(c)));
    for (const auto& [pn, v] : st.inner.preds) parts.push_back(Assertion::user(pn, v));
    for (const Expr& c : st.inner.inner.pc) parts.push_back(Assertion::pure(simplify(c)));
    return Assertion::starAll(parts);
}

}  // namespace

AbduceResult abduceProc(const AnnotatedProgram& prog, const std::string& f, const Solver& solver,
                        RunLimits limits) {
    AbduceResult out;
    const GilProc* proc = prog.prog.find(f);
    if (!proc) {
        out.notes.push_back("no procedure named " + f);
        return out;
    }

    BiModel model(solver);
    BiState init;
    init.inner.inner.store.emplace(proc->param, Expr::lvar("#" + proc->param));

    Config<BiModel> cfg = initialConfig<BiModel>(prog.prog, f, init);
    auto res = runWith(model, cfg, limits,
                       [](const BiModel& m, const Config<BiModel>& c) { return step(m, c); });

    auto finish = [&](const BiState& st, SynthesizedSpec::Kind kind, Expr ret,
                      const std::shared_ptr<const TraceNode>& trace, const std::string& note) {
        SynthesizedSpec sp;
        sp.proc = f;
        sp.kind = kind;
        sp.pre = buildPre(proc->param, st);
        sp.post = buildPost(st);
        sp.ret = simplify(ret);
        sp.pc = st.inner.inner.pc;
        sp.trace = materializeTrace(trace);
        sp.note = note;
        out.specs.push_back(std::move(sp));
    };

    for (const auto& fin : res.finals) {
        if (fin.outcome.kind == Outcome<Expr>::Kind::Return)
            finish(fin.state, SynthesizedSpec::Kind::Success, fin.outcome.value, fin.trace, "");
        else
            finish(fin.state, SynthesizedSpec::Kind::Bug, fin.outcome.value, fin.trace,
                   "reachable fail");
    }
    for (const auto& issue : res.issues) {
        if (issue.kind == BranchIssue<BiModel>::Kind::Error) {
            if (issue.message.find("setCell") != std::string::npos ||
                issue.message.find("dispose") != std::string::npos ||
                issue.message.find("unfixable") != std::string::npos) {
                finish(issue.cfg.state, SynthesizedSpec::Kind::Bug,
                       Expr::lit(GilValue::boolean(false)), issue.cfg.trace, issue.message);
                continue;
            }
            out.notes.push_back("branch error: " + issue.message);
        } else {
            out.notes.push_back("branch cut by budget: " + issue.message);
        }
    }
    return out;
}

ReplayOutcome replaySpec(const AnnotatedProgram& prog, const SynthesizedSpec& spec,
                         const Solver& solver, RunLimits limits) {
    ReplayOutcome out;
    const GilProc* proc = prog.prog.find(spec.proc);
    if (!proc) {
        out.detail = "no procedure named " + spec.proc;
        return out;
    }

    VerifyModel model(WhileSymbolicModel(solver), CorePredInterp::forWhile());
    VerifyState init;
    init.inner.store.emplace(proc->param, Expr::lvar("#" + proc->param));

    std::map<std::string, Expr> theta;
    for (const std::string& lv : spec.pre.freeLVars()) theta.emplace(lv, Expr::lvar(lv));

    std::vector<VerifyState> starts;
    try {
        starts = produce(model, init, spec.pre, theta);
    } catch (const EngineError& e) {
        out.detail = std::string("producing the synthesized pre failed: ") + e.what();
        return out;
    }
    if (starts.empty()) {
        out.detail = "synthesized pre is unsatisfiable";
        return out;
    }

    for (const VerifyState& st : starts) {
        Config<VerifyModel> cfg = initialConfig<VerifyModel>(prog.prog, spec.proc, st);
        auto res = runWith(model, cfg, limits,
                           [](const VerifyModel& m, const Config<VerifyModel>& c) {
                               return step(m, c);
                           });
        for (const auto& fin : res.finals) {
            bool wantReturn = spec.kind == SynthesizedSpec::Kind::Success;
            bool isReturn = fin.outcome.kind == Outcome<Expr>::Kind::Return;
            if (wantReturn != isReturn) continue;
            if (simplify(fin.outcome.value) != spec.ret) continue;
            if (model.inner().solver().isSat(fin.state.inner.pc) == SatResult::Unsat) continue;
            out.ok = true;
            return out;
        }
    }
    out.detail = "no fix-free branch reproduces the synthesized behaviour";
    return out;
}

}  // namespace gilliant
