#pragma once

#include "gilliant/verify.hpp"

namespace gilliant {

/// Bi-abductive state: a predicate-supporting symbolic state paired with the
/// anti-frame accumulated so far. The anti-frame only ever grows by starring.
struct BiState {
    VerifyState inner;
    Assertion antiFrame = Assertion::emp();
};

/// State model with on-the-fly error fixing: action errors that come with
/// fixes are repaired by producing the fix, retrying the action, and starring
/// the fix onto the anti-frame; assumed formulas are starred as pure parts.
class BiModel {
public:
    using State = BiState;
    using Value = Expr;
    using Store = std::map<std::string, Expr>;

    explicit BiModel(Solver solver)
        : fixCtx_(std::make_shared<wl::FixContext>()),
          inner_(WhileSymbolicModel(std::move(solver), fixCtx_), CorePredInterp::forWhile()) {}

    const VerifyModel& inner() const { return inner_; }
    const CorePredInterp& interp() const { return inner_.interp(); }

    State setVar(State st, const std::string& x, const Value& v) const {
        st.inner = inner_.setVar(std::move(st.inner), x, v);
        return st;
    }
    State setStore(State st, Store sto) const {
        st.inner = inner_.setStore(std::move(st.inner), std::move(sto));
        return st;
    }
    Store getStore(const State& st) const { return inner_.getStore(st.inner); }
    std::optional<Value> ee(const State& st, const Expr& e) const { return inner_.ee(st.inner, e); }

    ActionOutcome<State, Value> ea(const std::string& action, const State& st,
                                   const Value& v) const;

    std::vector<std::pair<State, Value>> assume(const State& st, const Value& v) const;

    std::vector<std::pair<State, Value>> symbAlloc(const State& st, int site) const {
        return lift(st, inner_.symbAlloc(st.inner, site));
    }
    std::vector<std::pair<State, Value>> freshAlloc(const State& st, int site) const {
        return lift(st, inner_.freshAlloc(st.inner, site));
    }

    std::optional<std::string> procTarget(const State& st, const Value& v) const {
        return inner_.procTarget(st.inner, v);
    }

    std::optional<Value> evalWithSubst(const State& st, const Expr& e,
                                       const std::map<std::string, Value>& subst) const {
        return inner_.evalWithSubst(st.inner, e, subst);
    }
    bool valueEntailedEqual(const State& st, const Value& a, const Value& b) const {
        return inner_.valueEntailedEqual(st.inner, a, b);
    }
    Value packPredArg(const std::string& pn, const Value& v) const {
        return inner_.packPredArg(pn, v);
    }
    std::optional<std::pair<std::string, Value>> unpackPredArg(const Value& v) const {
        return inner_.unpackPredArg(v);
    }
    Value trueValue() const { return inner_.trueValue(); }

    std::string showValue(const Value& v) const { return inner_.showValue(v); }
    std::string showState(const State& st) const {
        return inner_.showState(st.inner) + " antiframe=" + st.antiFrame.show();
    }

private:
    std::vector<std::pair<State, Value>> lift(
        const State& st, std::vector<std::pair<VerifyState, Value>> in) const {
        std::vector<std::pair<State, Value>> out;
        for (auto& [istate, val] : in) {
            State next = st;
            next.inner = std::move(istate);
            out.emplace_back(std::move(next), std::move(val));
        }
        return out;
    }

    std::shared_ptr<wl::FixContext> fixCtx_;
    VerifyModel inner_;
};

struct SynthesizedSpec {
    enum class Kind { Success, Bug };
    std::string proc;
    Kind kind = Kind::Success;
    Assertion pre;
    Assertion post;
    Expr ret;
    PathCondition pc;
    std::vector<std::string> trace;
    std::string note;  // bug cause for candidates

    std::string show() const;
};

struct AbduceResult {
    std::vector<SynthesizedSpec> specs;
    std::vector<std::string> notes;  // budget cuts and non-bug engine diagnostics
};

/// Run a procedure bi-abductively from the empty state with a fresh symbolic
/// argument; one spec per terminal branch. Success on Return, candidate Bug
/// on Fail or an unfixable action error.
AbduceResult abduceProc(const AnnotatedProgram& prog, const std::string& f, const Solver& solver,
                        RunLimits limits = {});

struct ReplayOutcome {
    bool ok = false;
    std::string detail;
};

/// The executable face of the bi-abduction theorem: producing a Success
/// spec's pre onto the empty plain symbolic state and re-running without
/// fixes must reach a terminal branch with the same outcome kind, the same
/// (simplified) return expression, and a satisfiable path condition.
ReplayOutcome replaySpec(const AnnotatedProgram& prog, const SynthesizedSpec& spec,
                         const Solver& solver, RunLimits limits = {});

}  // namespace gilliant
