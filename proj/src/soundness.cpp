#include "gilliant/soundness.hpp"

#include "gilliant/interp.hpp"

namespace gilliant {

WhileSymbolicState restrictState(const WhileSymbolicState& s1, const WhileSymbolicState& s2) {
    WhileSymbolicState out = s1;
    for (const Expr& c : s2.pc) out.pc.push_back(c);
    out.allocRecord = restrictRecord(s1.allocRecord, s2.allocRecord);
    return out;
}

namespace {

std::set<std::string> stateLVars(const WhileSymbolicState& st) {
    std::set<std::string> vars = st.memory.freeLVars();
    for (const auto& [_, e] : st.store) e.collectLVars(vars);
    for (const Expr& c : st.pc) c.collectLVars(vars);
    auto fromTokens = [&vars](const auto& tokmap) {
        for (const auto& [_, toks] : tokmap)
            for (const AllocToken& t : toks)
                if (t.kind == AllocToken::Kind::LVar) vars.insert(t.name);
    };
    fromTokens(st.allocRecord.sites());
    fromTokens(st.allocRecord.scripts());
    return vars;
}

std::set<std::string> locationPositionVars(const WhileSymbolicState& st) {
    std::set<std::string> out;
    for (const wl::SymCell& c : st.memory.cells())
        if (c.loc.isLVar()) out.insert(c.loc.varName());
    return out;
}

}  // namespace

std::vector<ModelWitness> modelsOf(const WhileSymbolicState& st, size_t n, const Solver& solver,
                                   const std::set<std::string>& extraVars) {
    std::set<std::string> vars = stateLVars(st);
    vars.insert(extraVars.begin(), extraVars.end());

    SampleHints hints;
    hints.locationVars = locationPositionVars(st);

    std::vector<ModelWitness> out;
    for (LogicalEnv& env : solver.sampleModels(st.pc, vars, n, hints)) {
        auto cmem = wl::interpretMemory(st.memory, env);
        if (!cmem) continue;

        WhileConcreteState conc;
        conc.memory = std::move(*cmem);
        bool ok = true;
        for (const auto& [x, e] : st.store) {
            auto v = evalUnder(e, env);
            if (!v) {
                ok = false;
                break;
            }
            conc.store.emplace(x, std::move(*v));
        }
        if (!ok) continue;

        conc.allocRecord = WitnessBuilder::map(st.allocRecord, [&env](const AllocToken& t) {
            if (t.kind != AllocToken::Kind::LVar) return t;
            auto it = env.find(t.name);
            return it == env.end() ? t : AllocToken::conc(it->second);
        });
        out.push_back({std::move(env), std::move(conc)});
    }
    return out;
}

namespace {

bool concreteStateModelled(const WhileSymbolicState& sym, const LogicalEnv& env,
                           const WhileConcreteState& conc, std::string& why) {
    auto cmem = wl::interpretMemory(sym.memory, env);
    if (!cmem) {
        why = "final symbolic memory has no interpretation under the witness environment";
        return false;
    }
    if (*cmem != conc.memory) {
        why = "final memories differ: expected " + cmem->show() + ", got " + conc.memory.show();
        return false;
    }
    if (sym.store.size() != conc.store.size()) {
        why = "final store domains differ";
        return false;
    }
    for (const auto& [x, e] : sym.store) {
        auto it = conc.store.find(x);
        auto v = evalUnder(e, env);
        if (it == conc.store.end() || !v || !(*v == it->second)) {
            why = "store differs at " + x;
            return false;
        }
    }
    AllocRecord expected = WitnessBuilder::map(sym.allocRecord, [&env](const AllocToken& t) {
        if (t.kind != AllocToken::Kind::LVar) return t;
        auto it = env.find(t.name);
        return it == env.end() ? t : AllocToken::conc(it->second);
    });
    if (!(expected == conc.allocRecord)) {
        why = "allocation records differ: expected " + expected.show() + ", got " +
              conc.allocRecord.show();
        return false;
    }
    return true;
}

}  // namespace

DifferentialReport differentialCheck(const AnnotatedProgram& prog, const std::string& entry,
                                     size_t modelsPerBranch, const RunLimits& limits,
                                     const Solver& solver) {
    DifferentialReport report;
    report.entry = entry;

    const GilProc* proc = prog.prog.find(entry);
    if (!proc) {
        report.counterexamples.push_back("no procedure named " + entry);
        return report;
    }

    WhileSymbolicModel symModel(solver);
    WhileSymbolicState sym0;
    Expr argVar = Expr::lvar("#" + proc->param);
    sym0.store.emplace(proc->param, argVar);

    Config<WhileSymbolicModel> cfg0 = initialConfig<WhileSymbolicModel>(prog.prog, entry, sym0);
    auto symRun = runWith(symModel, cfg0, limits,
                          [](const WhileSymbolicModel& m, const Config<WhileSymbolicModel>& c) {
                              return step(m, c);
                          });

    for (const auto& issue : symRun.issues) report.notes.push_back("symbolic: " + issue.message);
    report.symbolicBranches = symRun.finals.size();

    for (const auto& fin : symRun.finals) {
        // strengthen the initial state with the final one, then sample
        WhileSymbolicState restricted;
        try {
            restricted = restrictState(sym0, fin.state);
        } catch (const IncompatibleRecords& e) {
            report.counterexamples.push_back(std::string("restriction failed: ") + e.what());
            continue;
        }
        std::set<std::string> finVars = stateLVars(fin.state);
        fin.outcome.value.collectLVars(finVars);
        auto witnesses = modelsOf(restricted, modelsPerBranch, solver, finVars);
        if (witnesses.empty()) {
            report.notes.push_back("no witness constructed for a branch with pc " +
                                   showPc(fin.state.pc));
            continue;
        }
        ++report.branchesChecked;

        for (const ModelWitness& w : witnesses) {
            ++report.witnessesChecked;
            WhileConcreteModel concModel;
            Config<WhileConcreteModel> ccfg =
                initialConfig<WhileConcreteModel>(prog.prog, entry, w.concrete);
            RunLimits concLimits = limits;
            concLimits.unroll = -1;
            auto concRun =
                runWith(concModel, ccfg, concLimits,
                        [](const WhileConcreteModel& m, const Config<WhileConcreteModel>& c) {
                            return step(m, c);
                        });

            std::string why;
            bool pass = false;
            if (concRun.finals.size() == 1 && concRun.issues.empty()) {
                const auto& cf = concRun.finals[0];
                bool kindMatches =
                    (cf.outcome.kind == Outcome<GilValue>::Kind::Return) ==
                    (fin.outcome.kind == Outcome<Expr>::Kind::Return);
                auto symOutVal = evalUnder(fin.outcome.value, w.env);
                if (!kindMatches) {
                    why = "outcome kinds differ";
                } else if (cf.stack.size() != fin.stack.size()) {
                    why = "call stack shapes differ";
                } else if (!symOutVal || !(*symOutVal == cf.outcome.value)) {
                    why = "outcome values differ: symbolic " + fin.outcome.value.show() +
                          " vs concrete " + cf.outcome.value.show();
                } else {
                    pass = concreteStateModelled(fin.state, w.env, cf.state, why);
                }
            } else if (!concRun.issues.empty()) {
                why = "concrete run aborted: " + concRun.issues[0].message;
            } else {
                why = "concrete run produced " + std::to_string(concRun.finals.size()) +
                      " outcomes";
            }

            if (pass) {
                ++report.passes;
            } else {
                std::string ce = "branch with pc " + showPc(fin.state.pc) + ": " + why;
                ce += "\n  symbolic trace:";
                for (const std::string& t : materializeTrace(fin.trace)) ce += "\n    " + t;
                report.counterexamples.push_back(std::move(ce));
            }
        }
    }
    return report;
}

}  // namespace gilliant
