#pragma once

#include "gilliant/alloc.hpp"
#include "gilliant/interp.hpp"
#include "gilliant/logic.hpp"
#include "gilliant/while_memory.hpp"

namespace gilliant {

// ---------------------------------------------------------------------------
// Concrete state constructor
// ---------------------------------------------------------------------------

/// Concrete memory model contract:
///   using Mem;                      // value type, equality comparable
///   static std::optional<std::pair<Mem, GilValue>>
///       cea(const std::string& action, const Mem&, const GilValue&);
///   static std::string show(const Mem&);
template <typename MM>
struct ConcreteState {
    typename MM::Mem memory;
    std::map<std::string, GilValue> store;
    AllocRecord allocRecord;
};

template <typename MM>
class ConcreteModel {
public:
    using State = ConcreteState<MM>;
    using Value = GilValue;
    using Store = std::map<std::string, GilValue>;

    State setVar(State st, const std::string& x, const Value& v) const {
        st.store[x] = v;
        return st;
    }
    State setStore(State st, Store sto) const {
        st.store = std::move(sto);
        return st;
    }
    Store getStore(const State& st) const { return st.store; }

    std::optional<Value> ee(const State& st, const Expr& e) const {
        return evalExpr(
            e,
            [&st](const std::string& x) -> std::optional<GilValue> {
                auto it = st.store.find(x);
                if (it == st.store.end()) return std::nullopt;
                return it->second;
            },
            nullptr);
    }

    ActionOutcome<State, Value> ea(const std::string& action, const State& st,
                                   const Value& v) const {
        ActionOutcome<State, Value> out;
        auto res = MM::cea(action, st.memory, v);
        if (!res) {
            out.error = EngineError(EngineError::Kind::MissingResource,
                                    action + "(" + v.show() + ") failed on " + MM::show(st.memory));
            return out;
        }
        State next = st;
        next.memory = std::move(res->first);
        out.branches.emplace_back(std::move(next), std::move(res->second));
        return out;
    }

    std::vector<std::pair<State, Value>> assume(const State& st, const Value& v) const {
        if (v.isBool() && v.asBool()) return {{st, v}};
        return {};
    }

    std::vector<std::pair<State, Value>> symbAlloc(const State& st, int site) const {
        auto [rec, tok] = st.allocRecord.alloc(site, Universe::UninterpretedSymbols);
        State next = st;
        next.allocRecord = std::move(rec);
        return {{std::move(next), GilValue::symbol(tok.name)}};
    }

    std::vector<std::pair<State, Value>> freshAlloc(const State& st, int site) const {
        auto [rec, tok] = st.allocRecord.alloc(site, Universe::ConcreteValues);
        State next = st;
        next.allocRecord = std::move(rec);
        return {{std::move(next), tok.value}};
    }

    std::optional<std::string> procTarget(const State&, const Value& v) const {
        if (v.isProc()) return v.procName();
        if (v.isStr()) return v.asStr();
        return std::nullopt;
    }

    Value trueValue() const { return GilValue::boolean(true); }

    Value packPredArg(const std::string& pn, const Value& v) const {
        return GilValue::list({GilValue::str(pn), v});
    }
    std::optional<std::pair<std::string, Value>> unpackPredArg(const Value& v) const {
        if (!v.isList() || v.asList().size() != 2 || !v.asList()[0].isStr()) return std::nullopt;
        return std::make_pair(v.asList()[0].asStr(), v.asList()[1]);
    }

    bool valueEntailedEqual(const State&, const Value& a, const Value& b) const { return a == b; }

    /// Evaluate an assertion expression: substitution images win over the
    /// store for program variables; logical variables resolve only through
    /// the substitution (concrete states carry no ambient logical variables).
    std::optional<Value> evalWithSubst(const State& st, const Expr& e,
                                       const std::map<std::string, Value>& subst) const {
        return evalExpr(
            e,
            [&](const std::string& x) -> std::optional<GilValue> {
                auto it = subst.find(x);
                if (it != subst.end()) return it->second;
                auto sit = st.store.find(x);
                if (sit == st.store.end()) return std::nullopt;
                return sit->second;
            },
            [&](const std::string& x) -> std::optional<GilValue> {
                auto it = subst.find(x);
                if (it == subst.end()) return std::nullopt;
                return it->second;
            });
    }

    std::string showValue(const Value& v) const { return v.show(); }
    std::string showState(const State& st) const {
        std::string out = "mem=" + MM::show(st.memory) + " store={";
        bool first = true;
        for (const auto& [x, v] : st.store) {
            if (!first) out += ", ";
            first = false;
            out += x + "=" + v.show();
        }
        return out + "}";
    }
};

// ---------------------------------------------------------------------------
// Symbolic state constructor
// ---------------------------------------------------------------------------

/// Symbolic memory model contract:
///   using Mem;
///   static wl::SymActionResult sea(const std::string& action, const Mem&, const Expr& arg,
///                                  const PathCondition&, const Solver&, wl::FixContext*);
///   static std::string show(const Mem&);
template <typename MM>
struct SymbolicState {
    typename MM::Mem memory;
    std::map<std::string, Expr> store;
    AllocRecord allocRecord;
    PathCondition pc;
};

template <typename MM>
class SymbolicModel {
public:
    using State = SymbolicState<MM>;
    using Value = Expr;
    using Store = std::map<std::string, Expr>;

    SymbolicModel() = default;
    explicit SymbolicModel(Solver solver, std::shared_ptr<wl::FixContext> fixCtx = nullptr)
        : solver_(std::move(solver)), fixCtx_(std::move(fixCtx)) {}

    const Solver& solver() const { return solver_; }
    wl::FixContext* fixContext() const { return fixCtx_.get(); }

    State setVar(State st, const std::string& x, const Value& v) const {
        st.store[x] = v;
        return st;
    }
    State setStore(State st, Store sto) const {
        st.store = std::move(sto);
        return st;
    }
    Store getStore(const State& st) const { return st.store; }

    /// Store substitution followed by algebraic simplification.
    std::optional<Value> ee(const State& st, const Expr& e) const {
        return substStore(e, st.store).expr;
    }

    ActionOutcome<State, Value> ea(const std::string& action, const State& st,
                                   const Value& v) const {
        ActionOutcome<State, Value> out;
        auto res = MM::sea(action, st.memory, v, st.pc, solver_, fixCtx_.get());
        if (res.error) {
            out.error = std::move(res.error);
            return out;
        }
        out.fixes = std::move(res.fixes);
        for (auto& br : res.branches) {
            State next = st;
            next.memory = std::move(br.mem);
            bool keep = true;
            for (const Expr& c : br.pcExt) {
                Expr s = simplify(c);
                if (s.isLitBool(true)) continue;
                next.pc.push_back(s);
                keep = false;  // pc grew; recheck satisfiability below
            }
            if (!keep && solver_.isSat(next.pc) == SatResult::Unsat) continue;
            out.branches.emplace_back(std::move(next), std::move(br.value));
        }
        return out;
    }

    std::vector<std::pair<State, Value>> assume(const State& st, const Value& v) const {
        Expr cond = simplify(v);
        if (cond.isLitBool(true)) return {{st, Expr::lit(GilValue::boolean(true))}};
        if (cond.isLitBool(false)) return {};
        State next = st;
        next.pc.push_back(cond);
        if (solver_.isSat(next.pc) == SatResult::Unsat) return {};
        return {{std::move(next), Expr::lit(GilValue::boolean(true))}};
    }

    std::vector<std::pair<State, Value>> symbAlloc(const State& st, int site) const {
        auto [rec, tok] = st.allocRecord.alloc(site, Universe::UninterpretedSymbols);
        State next = st;
        next.allocRecord = std::move(rec);
        return {{std::move(next), Expr::lit(GilValue::symbol(tok.name))}};
    }

    std::vector<std::pair<State, Value>> freshAlloc(const State& st, int site) const {
        auto [rec, tok] = st.allocRecord.alloc(site, Universe::LogicalVars);
        State next = st;
        next.allocRecord = std::move(rec);
        return {{std::move(next), Expr::lvar(tok.name)}};
    }

    std::optional<std::string> procTarget(const State&, const Value& v) const {
        Expr s = simplify(v);
        if (s.isLit() && s.litVal().isProc()) return s.litVal().procName();
        if (s.isLit() && s.litVal().isStr()) return s.litVal().asStr();
        return std::nullopt;
    }

    Value trueValue() const { return Expr::lit(GilValue::boolean(true)); }

    Value packPredArg(const std::string& pn, const Value& v) const {
        return simplify(Expr::binop(
            BinOpKind::Cons, Expr::lit(GilValue::str(pn)),
            Expr::binop(BinOpKind::Cons, v, Expr::lit(GilValue::list({})))));
    }
    std::optional<std::pair<std::string, Value>> unpackPredArg(const Value& v) const {
        auto sp = listSpine(simplify(v));
        if (!sp || sp->rest || sp->elems.size() != 2) return std::nullopt;
        if (!sp->elems[0].isLit() || !sp->elems[0].litVal().isStr()) return std::nullopt;
        return std::make_pair(sp->elems[0].litVal().asStr(), sp->elems[1]);
    }

    bool valueEntailedEqual(const State& st, const Value& a, const Value& b) const {
        return solver_.entails(st.pc, Expr::binop(BinOpKind::Eq, a, b));
    }

    /// Assertion expressions may mix program variables, substitution-bound
    /// names, and ambient logical variables; the substitution wins, remaining
    /// program variables resolve through the store, remaining logical
    /// variables denote themselves.
    std::optional<Value> evalWithSubst(const State& st, const Expr& e,
                                       const std::map<std::string, Value>& subst) const {
        Expr mid = substMixedPartial(e, subst);
        return substStore(mid, st.store).expr;
    }

    std::string showValue(const Value& v) const { return v.show(); }
    std::string showState(const State& st) const {
        std::string out = "mem=" + MM::show(st.memory) + " store={";
        bool first = true;
        for (const auto& [x, v] : st.store) {
            if (!first) out += ", ";
            first = false;
            out += x + "=" + v.show();
        }
        out += "} pc=" + showPc(st.pc);
        return out;
    }

private:
    Solver solver_;
    std::shared_ptr<wl::FixContext> fixCtx_;
};

// ---------------------------------------------------------------------------
// WHILE instantiations
// ---------------------------------------------------------------------------

struct WhileConcreteMM {
    using Mem = wl::ConcreteWhileMemory;
    static std::optional<std::pair<Mem, GilValue>> cea(const std::string& action, const Mem& m,
                                                       const GilValue& v) {
        return wl::ceaWhile(action, m, v);
    }
    static std::string show(const Mem& m) { return m.show(); }
};

struct WhileSymbolicMM {
    using Mem = wl::SymbolicWhileMemory;
    static wl::SymActionResult sea(const std::string& action, const Mem& m, const Expr& arg,
                                   const PathCondition& pc, const Solver& solver,
                                   wl::FixContext* fixCtx) {
        return wl::seaWhile(action, m, arg, pc, solver, fixCtx);
    }
    static std::string show(const Mem& m) { return m.show(); }
};

using WhileConcreteModel = ConcreteModel<WhileConcreteMM>;
using WhileConcreteState = ConcreteState<WhileConcreteMM>;
using WhileSymbolicModel = SymbolicModel<WhileSymbolicMM>;
using WhileSymbolicState = SymbolicState<WhileSymbolicMM>;

/// Canonical rendering for state-equality checks in tests: sorted memory
/// cells, sorted pc conjuncts, store as sorted pairs.
std::string canonicalSymbolicState(const WhileSymbolicState& st);

}  // namespace gilliant
