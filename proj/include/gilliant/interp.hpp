#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <set>

#include "gilliant/assertions.hpp"
#include "gilliant/program.hpp"

namespace gilliant {

/// State-model contract used by the interpreter templates. A model M provides:
///
///   using State;                       // immutable state value
///   using Value;                       // store value (GilValue or Expr)
///   using Store = std::map<std::string, Value>;
///
///   State setVar(State, name, Value) const;
///   State setStore(State, Store) const;
///   Store getStore(State) const;
///   std::optional<Value> ee(State, Expr) const;        // partial evaluation
///   ActionOutcome<State,Value> ea(action, State, Value) const;
///   std::vector<std::pair<State,Value>> assume(State, Value) const;
///   std::vector<std::pair<State,Value>> symbAlloc(State, int site) const;
///   std::vector<std::pair<State,Value>> freshAlloc(State, int site) const;
///   std::optional<std::string> procTarget(State, Value) const;
///   std::string showValue(Value) const;
///   std::string showState(State) const;
///
/// States are immutable snapshots; branches never share mutable data.
template <typename State, typename Value>
struct ActionOutcome {
    std::vector<std::pair<State, Value>> branches;
    std::vector<Fix> fixes;            // bi-abduction suggestions; meaningful to BiModel only
    std::optional<EngineError> error;  // missing resource / unfixable; branches empty
};

template <typename V>
struct Outcome {
    enum class Kind { Continue, Return, Fail };
    Kind kind = Kind::Continue;
    V value{};

    bool terminal() const { return kind != Kind::Continue; }
    static Outcome cont() { return {}; }
    static Outcome ret(V v) { return {Kind::Return, std::move(v)}; }
    static Outcome fail(V v) { return {Kind::Fail, std::move(v)}; }
};

struct TraceNode {
    std::shared_ptr<const TraceNode> parent;
    std::string proc;
    int idx = 0;
    std::string cmd;
};

inline std::vector<std::string> materializeTrace(const std::shared_ptr<const TraceNode>& tip) {
    std::vector<std::string> out;
    for (auto n = tip; n; n = n->parent)
        out.push_back(n->proc + ":" + std::to_string(n->idx) + ": " + n->cmd);
    std::reverse(out.begin(), out.end());
    return out;
}

template <typename M>
struct Frame {
    std::string proc;
    bool top = false;                        // bottom-of-stack frame carries only the name
    std::string retVar;                      // where the caller stores the result
    typename M::Store savedStore;            // caller's store
    int retIdx = 0;                          // caller resumes here
};

template <typename M>
struct Config {
    const GilProgram* prog = nullptr;
    typename M::State state{};
    std::vector<Frame<M>> stack;  // bottom first; never empty
    int idx = 0;
    Outcome<typename M::Value> outcome{};
    size_t steps = 0;
    std::shared_ptr<const TraceNode> trace;
    std::map<std::pair<std::string, int>, int> backEdges;

    const Frame<M>& top() const { return stack.back(); }
};

template <typename M>
Config<M> initialConfig(const GilProgram& prog, const std::string& entry,
                        typename M::State state) {
    Config<M> cfg;
    cfg.prog = &prog;
    Frame<M> f;
    f.proc = entry;
    f.top = true;
    cfg.stack.push_back(std::move(f));
    cfg.state = std::move(state);
    return cfg;
}

namespace detail {

/// The variable named "_" is a write-only discard; assignments to it leave
/// the store untouched (compiled mutate/dispose use it for their unused
/// results, whose value differs between the concrete and symbolic actions).
template <typename M>
typename M::State bindResult(const M& m, typename M::State st, const std::string& x,
                             const typename M::Value& v) {
    if (x == "_") return st;
    return m.setVar(std::move(st), x, v);
}

template <typename M>
const GilCommand& currentCommand(const Config<M>& cfg) {
    const GilProc* proc = cfg.prog->find(cfg.top().proc);
    if (!proc)
        throw EngineError(EngineError::Kind::MissingProc,
                          "no procedure named " + cfg.top().proc);
    if (cfg.idx < 0 || static_cast<size_t>(cfg.idx) >= proc->body.size())
        throw EngineError(EngineError::Kind::BadTarget,
                          cfg.top().proc + ": command index " + std::to_string(cfg.idx) +
                              " out of range");
    return proc->body[static_cast<size_t>(cfg.idx)];
}

template <typename M>
Config<M> advance(const Config<M>& cfg, typename M::State st, int idx) {
    Config<M> next = cfg;
    next.state = std::move(st);
    next.idx = idx;
    next.steps = cfg.steps + 1;
    auto node = std::make_shared<TraceNode>();
    node->parent = cfg.trace;
    node->proc = cfg.top().proc;
    node->idx = cfg.idx;
    node->cmd = currentCommand(cfg).show();
    next.trace = std::move(node);
    return next;
}

template <typename M>
typename M::Value evalOrThrow(const M& m, const Config<M>& cfg, const Expr& e) {
    auto v = m.ee(cfg.state, e);
    if (!v)
        throw EngineError(EngineError::Kind::ExprEval,
                          cfg.top().proc + ":" + std::to_string(cfg.idx) +
                              ": cannot evaluate " + e.show());
    return *v;
}

}  // namespace detail

/// One small-step transition. Returns every successor configuration; an empty
/// result means the branch was silently cut (vanish, contradictory assume).
/// Throws EngineError on malformed programs and unrecoverable action errors.
template <typename M>
std::vector<Config<M>> step(const M& m, const Config<M>& cfg) {
    using K = GilCommand::Kind;
    if (cfg.outcome.terminal())
        throw EngineError(EngineError::Kind::Internal, "step on a terminal configuration");

    const GilCommand& cmd = detail::currentCommand(cfg);
    std::vector<Config<M>> out;

    switch (cmd.kind) {
        case K::Assign: {
            auto v = detail::evalOrThrow(m, cfg, cmd.e);
            out.push_back(detail::advance(cfg, detail::bindResult(m, cfg.state, cmd.x, v),
                                          cfg.idx + 1));
            break;
        }
        case K::IfGoto: {
            const GilProc* proc = cfg.prog->find(cfg.top().proc);
            if (cmd.target < 0 || static_cast<size_t>(cmd.target) >= proc->body.size())
                throw EngineError(EngineError::Kind::BadTarget,
                                  "goto target out of range: " + std::to_string(cmd.target));
            auto vTrue = detail::evalOrThrow(m, cfg, cmd.e);
            auto vFalse = detail::evalOrThrow(m, cfg, Expr::unop(UnOpKind::Not, cmd.e));
            for (auto& [st, _] : m.assume(cfg.state, vTrue)) {
                Config<M> next = detail::advance(cfg, st, cmd.target);
                if (cmd.target <= cfg.idx) ++next.backEdges[{cfg.top().proc, cfg.idx}];
                out.push_back(std::move(next));
            }
            for (auto& [st, _] : m.assume(cfg.state, vFalse))
                out.push_back(detail::advance(cfg, st, cfg.idx + 1));
            break;
        }
        case K::Action: {
            auto v = detail::evalOrThrow(m, cfg, cmd.e);
            auto res = m.ea(cmd.action, cfg.state, v);
            if (res.error) throw *res.error;
            if (res.branches.empty() && !res.fixes.empty())
                throw EngineError(EngineError::Kind::MissingResource,
                                  "action " + cmd.action + " is missing resource (fixes exist)");
            for (auto& [st, rv] : res.branches)
                out.push_back(detail::advance(cfg, detail::bindResult(m, st, cmd.x, rv),
                                              cfg.idx + 1));
            break;
        }
        case K::Symb: {
            for (auto& [st, v] : m.symbAlloc(cfg.state, cmd.site))
                out.push_back(detail::advance(cfg, detail::bindResult(m, st, cmd.x, v),
                                              cfg.idx + 1));
            break;
        }
        case K::Fresh: {
            for (auto& [st, v] : m.freshAlloc(cfg.state, cmd.site))
                out.push_back(detail::advance(cfg, detail::bindResult(m, st, cmd.x, v),
                                              cfg.idx + 1));
            break;
        }
        case K::Call: {
            auto fnVal = detail::evalOrThrow(m, cfg, cmd.e);
            auto fname = m.procTarget(cfg.state, fnVal);
            if (!fname)
                throw EngineError(EngineError::Kind::ExprEval,
                                  "call target does not denote a procedure: " + cmd.e.show());
            const GilProc* callee = cfg.prog->find(*fname);
            if (!callee)
                throw EngineError(EngineError::Kind::MissingProc, "no procedure named " + *fname);
            auto arg = detail::evalOrThrow(m, cfg, cmd.e2);
            Frame<M> fr;
            fr.proc = *fname;
            fr.retVar = cmd.x;
            fr.savedStore = m.getStore(cfg.state);
            fr.retIdx = cfg.idx + 1;
            typename M::Store calleeStore;
            calleeStore.emplace(callee->param, arg);
            Config<M> next = detail::advance(cfg, m.setStore(cfg.state, calleeStore), 0);
            next.stack.push_back(std::move(fr));
            out.push_back(std::move(next));
            break;
        }
        case K::Return: {
            auto v = detail::evalOrThrow(m, cfg, cmd.e);
            if (cfg.stack.size() == 1) {
                Config<M> next = cfg;
                next.steps = cfg.steps + 1;
                next.outcome = Outcome<typename M::Value>::ret(v);
                out.push_back(std::move(next));
            } else {
                Frame<M> fr = cfg.stack.back();
                auto st = m.setStore(cfg.state, fr.savedStore);
                st = detail::bindResult(m, std::move(st), fr.retVar, v);
                Config<M> next = detail::advance(cfg, st, fr.retIdx);
                next.stack.pop_back();
                out.push_back(std::move(next));
            }
            break;
        }
        case K::Fail: {
            auto v = detail::evalOrThrow(m, cfg, cmd.e);
            Config<M> next = cfg;
            next.steps = cfg.steps + 1;
            next.outcome = Outcome<typename M::Value>::fail(v);
            out.push_back(std::move(next));
            break;
        }
        case K::Vanish: break;
        case K::Fold:
        case K::Unfold:
        case K::SpecCall:
            throw EngineError(EngineError::Kind::LogicalCmd,
                              "logical command outside the verification semantics: " + cmd.show());
    }
    return out;
}

struct RunLimits {
    size_t stepBudget = 100000;
    int unroll = -1;  // negative: unbounded
};

template <typename M>
struct BranchIssue {
    enum class Kind { Error, Budget, Unroll };
    Kind kind;
    std::string message;
    Config<M> cfg;
};

template <typename M>
struct RunResult {
    std::vector<Config<M>> finals;
    std::vector<BranchIssue<M>> issues;

    bool hasFail() const {
        for (const auto& c : finals)
            if (c.outcome.kind == Outcome<typename M::Value>::Kind::Fail) return true;
        return false;
    }
};

using CoverageSink = std::set<std::pair<std::string, int>>;

/// Depth-first closure of a stepper from a starting configuration. Each
/// branch carries its own step count against the budget; back-edge traversal
/// counts enforce the unroll bound when one is set.
template <typename M, typename StepFn>
RunResult<M> runWith(const M& m, Config<M> start, const RunLimits& limits, StepFn&& stepper,
                     CoverageSink* coverage = nullptr) {
    RunResult<M> result;
    std::vector<Config<M>> work;
    work.push_back(std::move(start));
    while (!work.empty()) {
        Config<M> cfg = std::move(work.back());
        work.pop_back();
        if (cfg.outcome.terminal()) {
            result.finals.push_back(std::move(cfg));
            continue;
        }
        if (cfg.steps >= limits.stepBudget) {
            result.issues.push_back({BranchIssue<M>::Kind::Budget,
                                     "step budget exhausted after " + std::to_string(cfg.steps) +
                                         " steps",
                                     std::move(cfg)});
            continue;
        }
        if (limits.unroll >= 0) {
            bool over = false;
            for (const auto& [_, n] : cfg.backEdges)
                if (n > limits.unroll) over = true;
            if (over) {
                result.issues.push_back({BranchIssue<M>::Kind::Unroll,
                                         "loop unroll bound exceeded", std::move(cfg)});
                continue;
            }
        }
        if (coverage) coverage->emplace(cfg.top().proc, cfg.idx);
        try {
            auto succ = stepper(m, cfg);
            // keep depth-first exploration in rule order
            for (auto it = succ.rbegin(); it != succ.rend(); ++it) work.push_back(std::move(*it));
        } catch (const EngineError& err) {
            result.issues.push_back({BranchIssue<M>::Kind::Error, err.what(), std::move(cfg)});
        }
    }
    return result;
}

template <typename M>
RunResult<M> run(const M& m, const GilProgram& prog, const std::string& entry,
                 typename M::State init, typename M::Value arg, const RunLimits& limits,
                 CoverageSink* coverage = nullptr) {
    const GilProc* proc = prog.find(entry);
    if (!proc) throw EngineError(EngineError::Kind::MissingProc, "no procedure named " + entry);
    typename M::Store store;
    store.emplace(proc->param, std::move(arg));
    Config<M> cfg = initialConfig<M>(prog, entry, m.setStore(std::move(init), store));
    return runWith(m, std::move(cfg), limits,
                   [](const M& mm, const Config<M>& c) { return step(mm, c); }, coverage);
}

}  // namespace gilliant
