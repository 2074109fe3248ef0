#pragma once

#include "gilliant/state_ctor.hpp"

namespace gilliant {

/// Which actions realize each core predicate's setter and getter.
struct CorePredInterp {
    std::map<std::string, std::string> setters;
    std::map<std::string, std::string> getters;

    static CorePredInterp forWhile() {
        CorePredInterp out;
        out.setters[wl::kCellPred] = wl::kSetCell;
        out.getters[wl::kCellPred] = wl::kGetCell;
        return out;
    }
};

template <typename Inner>
struct PredStateT {
    typename Inner::State inner;
    std::vector<std::pair<std::string, typename Inner::Value>> preds;
};

/// Predicate state constructor: couples an inner state with a list of folded
/// predicates and exposes the setP/getP actions over it. Everything else
/// delegates.
template <typename Inner>
class PredModel {
public:
    using State = PredStateT<Inner>;
    using Value = typename Inner::Value;
    using Store = typename Inner::Store;

    PredModel() = default;
    PredModel(Inner inner, CorePredInterp interp)
        : inner_(std::move(inner)), interp_(std::move(interp)) {}

    const Inner& inner() const { return inner_; }
    const CorePredInterp& interp() const { return interp_; }

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
                                   const Value& v) const {
        ActionOutcome<State, Value> out;
        if (action == "setP") {
            auto pv = inner_.unpackPredArg(v);
            if (!pv) {
                out.error = EngineError(EngineError::Kind::ExprEval,
                                        "setP: ill-shaped argument " + inner_.showValue(v));
                return out;
            }
            State next = st;
            next.preds.insert(next.preds.begin(), *pv);
            out.branches.emplace_back(std::move(next), trueValue());
            return out;
        }
        if (action == "getP") {
            auto pv = inner_.unpackPredArg(v);
            if (!pv) {
                out.error = EngineError(EngineError::Kind::ExprEval,
                                        "getP: ill-shaped argument " + inner_.showValue(v));
                return out;
            }
            for (size_t i = 0; i < st.preds.size(); ++i) {
                if (st.preds[i].first != pv->first) continue;
                if (!inner_.valueEntailedEqual(st.inner, st.preds[i].second, pv->second)) continue;
                State next = st;
                next.preds.erase(next.preds.begin() + static_cast<long>(i));
                out.branches.emplace_back(std::move(next), trueValue());
                return out;
            }
            out.error =
                EngineError(EngineError::Kind::MissingResource,
                            "getP: no folded predicate " + pv->first + " matching argument");
            return out;
        }
        auto res = inner_.ea(action, st.inner, v);
        out.error = std::move(res.error);
        out.fixes = std::move(res.fixes);
        for (auto& [istate, val] : res.branches) {
            State next = st;
            next.inner = std::move(istate);
            out.branches.emplace_back(std::move(next), std::move(val));
        }
        return out;
    }

    std::vector<std::pair<State, Value>> assume(const State& st, const Value& v) const {
        std::vector<std::pair<State, Value>> out;
        for (auto& [istate, val] : inner_.assume(st.inner, v)) {
            State next = st;
            next.inner = std::move(istate);
            out.emplace_back(std::move(next), std::move(val));
        }
        return out;
    }

    std::vector<std::pair<State, Value>> symbAlloc(const State& st, int site) const {
        std::vector<std::pair<State, Value>> out;
        for (auto& [istate, val] : inner_.symbAlloc(st.inner, site)) {
            State next = st;
            next.inner = std::move(istate);
            out.emplace_back(std::move(next), std::move(val));
        }
        return out;
    }

    std::vector<std::pair<State, Value>> freshAlloc(const State& st, int site) const {
        std::vector<std::pair<State, Value>> out;
        for (auto& [istate, val] : inner_.freshAlloc(st.inner, site)) {
            State next = st;
            next.inner = std::move(istate);
            out.emplace_back(std::move(next), std::move(val));
        }
        return out;
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
        std::string out = inner_.showState(st.inner) + " preds=[";
        for (size_t i = 0; i < st.preds.size(); ++i) {
            if (i) out += ", ";
            out += st.preds[i].first + "(" + inner_.showValue(st.preds[i].second) + ")";
        }
        return out + "]";
    }

private:
    Inner inner_;
    CorePredInterp interp_;
};

// ---------------------------------------------------------------------------
// Assertion interpretation: setters (produce) and getters (consume)
// ---------------------------------------------------------------------------

struct ConsumeError {
    enum class Kind { EntailmentFailure, MissingResource, Unsupported };
    Kind kind;
    std::string what;
};

template <typename PM>
struct ConsumeResult {
    std::vector<typename PM::State> states;
    std::optional<ConsumeError> error;  // set when states is empty
};

/// The setter of an assertion: star produces left then right, pure formulas
/// are assumed, user predicates go through setP, core predicates through
/// their setter action. Throws EngineError when a setter action reports an
/// unfixable failure; an empty result means an assumed formula was pruned.
template <typename PM>
std::vector<typename PM::State> produce(const PM& m, const typename PM::State& st,
                                        const Assertion& P,
                                        const std::map<std::string, typename PM::Value>& theta) {
    using State = typename PM::State;
    switch (P.kind()) {
        case Assertion::Kind::Emp: return {st};
        case Assertion::Kind::Pure: {
            auto v = m.evalWithSubst(st, P.expr(), theta);
            if (!v)
                throw EngineError(EngineError::Kind::ExprEval,
                                  "produce: cannot evaluate " + P.expr().show());
            std::vector<State> out;
            for (auto& [next, _] : m.assume(st, *v)) out.push_back(std::move(next));
            return out;
        }
        case Assertion::Kind::CorePred: {
            auto it = m.interp().setters.find(P.pred());
            if (it == m.interp().setters.end())
                throw EngineError(EngineError::Kind::UnknownPredicate,
                                  "no setter for core predicate " + P.pred());
            auto v = m.evalWithSubst(st, P.expr(), theta);
            if (!v)
                throw EngineError(EngineError::Kind::ExprEval,
                                  "produce: cannot evaluate " + P.expr().show());
            auto res = m.ea(it->second, st, *v);
            if (res.error) throw *res.error;
            std::vector<State> out;
            for (auto& [next, _] : res.branches) out.push_back(std::move(next));
            return out;
        }
        case Assertion::Kind::UserPred: {
            auto v = m.evalWithSubst(st, P.expr(), theta);
            if (!v)
                throw EngineError(EngineError::Kind::ExprEval,
                                  "produce: cannot evaluate " + P.expr().show());
            auto res = m.ea("setP", st, m.packPredArg(P.pred(), *v));
            if (res.error) throw *res.error;
            std::vector<State> out;
            for (auto& [next, _] : res.branches) out.push_back(std::move(next));
            return out;
        }
        case Assertion::Kind::Star: {
            std::vector<State> out;
            for (const State& mid : produce(m, st, P.lhs(), theta))
                for (State& fin : produce(m, mid, P.rhs(), theta)) out.push_back(std::move(fin));
            return out;
        }
    }
    return {};
}

/// The getter of an assertion: star consumes left then right, a pure formula
/// holds when assuming its negation prunes the state, user predicates go
/// through getP, core predicates through their getter action.
template <typename PM>
ConsumeResult<PM> consume(const PM& m, const typename PM::State& st, const Assertion& P,
                          const std::map<std::string, typename PM::Value>& theta) {
    using State = typename PM::State;
    ConsumeResult<PM> out;
    switch (P.kind()) {
        case Assertion::Kind::Emp: out.states.push_back(st); return out;
        case Assertion::Kind::Pure: {
            auto v = m.evalWithSubst(st, Expr::unop(UnOpKind::Not, P.expr()), theta);
            if (!v) {
                out.error = ConsumeError{ConsumeError::Kind::Unsupported,
                                         "cannot evaluate " + P.expr().show()};
                return out;
            }
            if (!m.assume(st, *v).empty()) {
                out.error = ConsumeError{ConsumeError::Kind::EntailmentFailure,
                                         "pure assertion not entailed: " + P.expr().show()};
                return out;
            }
            out.states.push_back(st);
            return out;
        }
        case Assertion::Kind::CorePred: {
            auto it = m.interp().getters.find(P.pred());
            if (it == m.interp().getters.end()) {
                out.error = ConsumeError{ConsumeError::Kind::Unsupported,
                                         "no getter for core predicate " + P.pred()};
                return out;
            }
            auto v = m.evalWithSubst(st, P.expr(), theta);
            if (!v) {
                out.error = ConsumeError{ConsumeError::Kind::Unsupported,
                                         "cannot evaluate " + P.expr().show()};
                return out;
            }
            auto res = m.ea(it->second, st, *v);
            if (res.error || res.branches.empty()) {
                out.error = ConsumeError{ConsumeError::Kind::MissingResource,
                                         res.error ? res.error->what()
                                                   : ("missing " + P.show())};
                return out;
            }
            for (auto& [next, _] : res.branches) out.states.push_back(std::move(next));
            return out;
        }
        case Assertion::Kind::UserPred: {
            auto v = m.evalWithSubst(st, P.expr(), theta);
            if (!v) {
                out.error = ConsumeError{ConsumeError::Kind::Unsupported,
                                         "cannot evaluate " + P.expr().show()};
                return out;
            }
            auto res = m.ea("getP", st, m.packPredArg(P.pred(), *v));
            if (res.error || res.branches.empty()) {
                out.error = ConsumeError{ConsumeError::Kind::MissingResource,
                                         res.error ? res.error->what()
                                                   : ("missing " + P.show())};
                return out;
            }
            for (auto& [next, _] : res.branches) out.states.push_back(std::move(next));
            return out;
        }
        case Assertion::Kind::Star: {
            auto left = consume(m, st, P.lhs(), theta);
            if (left.error) return left;
            std::optional<ConsumeError> firstError;
            for (const State& mid : left.states) {
                auto right = consume(m, mid, P.rhs(), theta);
                if (right.error && !firstError) firstError = right.error;
                for (State& fin : right.states) out.states.push_back(std::move(fin));
            }
            if (out.states.empty() && firstError) out.error = firstError;
            if (out.states.empty() && !out.error)
                out.error = ConsumeError{ConsumeError::Kind::MissingResource, "empty consume"};
            return out;
        }
    }
    out.error = ConsumeError{ConsumeError::Kind::Unsupported, "unknown assertion"};
    return out;
}

}  // namespace gilliant
