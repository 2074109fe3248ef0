#include "oracle_while.hpp"

namespace gilliant::testing {

namespace {

using wl::WhileProgram;
using wl::WhileStmt;

struct Flow {
    enum class Kind { Normal, Returned, Failed, Cut, Missing, Error, OutOfFuel };
    Kind kind = Kind::Normal;
    GilValue value;
    std::string msg;

    static Flow normal() { return {}; }
    static Flow returned(GilValue v) { return {Kind::Returned, std::move(v), ""}; }
    static Flow failed(GilValue v) { return {Kind::Failed, std::move(v), ""}; }
    static Flow cut() { return {Kind::Cut, {}, ""}; }
    static Flow missing(std::string m) { return {Kind::Missing, {}, std::move(m)}; }
    static Flow error(std::string m) { return {Kind::Error, {}, std::move(m)}; }
    static Flow fuel() { return {Kind::OutOfFuel, {}, ""}; }
};

struct Machine {
    const WhileProgram& prog;
    std::map<const WhileStmt*, int> sites;
    std::map<std::pair<std::string, std::string>, GilValue> mem;
    AllocRecord alloc;
    size_t fuel;

    explicit Machine(const WhileProgram& p, size_t f) : prog(p), sites(assignSites(p)), fuel(f) {}

    using Store = std::map<std::string, GilValue>;

    std::optional<GilValue> eval(const Expr& e, const Store& store) {
        return evalExpr(
            e,
            [&store](const std::string& x) -> std::optional<GilValue> {
                auto it = store.find(x);
                if (it == store.end()) return std::nullopt;
                return it->second;
            },
            nullptr);
    }

    Flow evalBool(const Expr& e, const Store& store, bool& out) {
        auto v = eval(e, store);
        if (!v) return Flow::error("cannot evaluate " + e.show());
        if (!v->isBool()) return Flow::error("condition is not boolean: " + e.show());
        out = v->asBool();
        return Flow::normal();
    }

    Flow exec(const WhileStmt& s, Store& store) {
        if (fuel == 0) return Flow::fuel();
        --fuel;
        using K = WhileStmt::Kind;
        switch (s.kind) {
            case K::Skip: return Flow::normal();
            case K::Seq: {
                Flow f = exec(*s.s1, store);
                if (f.kind != Flow::Kind::Normal) return f;
                return exec(*s.s2, store);
            }
            case K::Assign: {
                auto v = eval(s.e, store);
                if (!v) return Flow::error("cannot evaluate " + s.e.show());
                store[s.x] = *v;
                return Flow::normal();
            }
            case K::If: {
                bool b = false;
                Flow f = evalBool(s.e, store, b);
                if (f.kind != Flow::Kind::Normal) return f;
                return exec(b ? *s.s1 : *s.s2, store);
            }
            case K::While: {
                for (;;) {
                    if (fuel == 0) return Flow::fuel();
                    bool b = false;
                    Flow f = evalBool(s.e, store, b);
                    if (f.kind != Flow::Kind::Normal) return f;
                    if (!b) return Flow::normal();
                    f = exec(*s.s1, store);
                    if (f.kind != Flow::Kind::Normal) return f;
                }
            }
            case K::Call: {
                const wl::WhileProc* callee = prog.find(s.fname);
                if (!callee) return Flow::error("no procedure " + s.fname);
                auto v = eval(s.e, store);
                if (!v) return Flow::error("cannot evaluate " + s.e.show());
                Store inner{{callee->param, *v}};
                Flow f = exec(*callee->body, inner);
                if (f.kind == Flow::Kind::Normal) f = Flow::returned(GilValue::num(0L));
                if (f.kind != Flow::Kind::Returned) return f;
                store[s.x] = f.value;
                return Flow::normal();
            }
            case K::Return: {
                auto v = eval(s.e, store);
                if (!v) return Flow::error("cannot evaluate " + s.e.show());
                return Flow::returned(*v);
            }
            case K::Assume: {
                bool b = false;
                Flow f = evalBool(s.e, store, b);
                if (f.kind != Flow::Kind::Normal) return f;
                return b ? Flow::normal() : Flow::cut();
            }
            case K::Assert: {
                bool b = false;
                Flow f = evalBool(s.e, store, b);
                if (f.kind != Flow::Kind::Normal) return f;
                return b ? Flow::normal() : Flow::failed(GilValue::boolean(false));
            }
            case K::New: {
                auto it = sites.find(&s);
                if (it == sites.end()) return Flow::error("unassigned allocation site");
                auto [rec, tok] = alloc.alloc(it->second, Universe::UninterpretedSymbols);
                alloc = std::move(rec);
                GilValue loc = GilValue::symbol(tok.name);
                store[s.x] = loc;
                for (const auto& [prop, init] : s.fields) {
                    auto v = eval(init, store);
                    if (!v) return Flow::error("cannot evaluate " + init.show());
                    mem[{loc.symbolId(), prop}] = *v;
                }
                return Flow::normal();
            }
            case K::Lookup: {
                auto obj = eval(s.e, store);
                if (!obj) return Flow::error("cannot evaluate " + s.e.show());
                if (!obj->isSymb()) return Flow::missing("lookup on a non-location");
                auto it = mem.find({obj->symbolId(), s.prop});
                if (it == mem.end())
                    return Flow::missing("no property \"" + s.prop + "\" at " + obj->show());
                store[s.x] = it->second;
                return Flow::normal();
            }
            case K::Mutate: {
                auto obj = eval(s.e, store);
                auto v = eval(s.e2, store);
                if (!obj || !v) return Flow::error("cannot evaluate mutate operands");
                if (!obj->isSymb()) return Flow::missing("mutate on a non-location");
                mem[{obj->symbolId(), s.prop}] = *v;
                return Flow::normal();
            }
            case K::Dispose: {
                auto obj = eval(s.e, store);
                if (!obj) return Flow::error("cannot evaluate " + s.e.show());
                if (!obj->isSymb()) return Flow::missing("dispose on a non-location");
                for (auto it = mem.begin(); it != mem.end();)
                    it = it->first.first == obj->symbolId() ? mem.erase(it) : std::next(it);
                return Flow::normal();
            }
            case K::Fold:
            case K::Unfold:
            case K::SpecCall:
                return Flow::error("logical command in a concrete oracle run");
        }
        return Flow::error("unreachable");
    }
};

}  // namespace

OracleOutcome oracleRun(const WhileProgram& prog, const std::string& entry, const GilValue& arg,
                        size_t fuel) {
    const wl::WhileProc* proc = prog.find(entry);
    if (!proc) return {OracleOutcome::Kind::Error, {}, "no procedure " + entry};
    Machine m(prog, fuel);
    Machine::Store store{{proc->param, arg}};
    Flow f = m.exec(*proc->body, store);
    if (f.kind == Flow::Kind::Normal) f = Flow::returned(GilValue::num(0L));
    switch (f.kind) {
        case Flow::Kind::Returned: return {OracleOutcome::Kind::Return, f.value, ""};
        case Flow::Kind::Failed: return {OracleOutcome::Kind::Fail, f.value, ""};
        case Flow::Kind::Cut: return {OracleOutcome::Kind::NoResult, {}, ""};
        case Flow::Kind::Missing: return {OracleOutcome::Kind::Missing, {}, f.msg};
        case Flow::Kind::OutOfFuel: return {OracleOutcome::Kind::Budget, {}, ""};
        default: return {OracleOutcome::Kind::Error, {}, f.msg};
    }
}

}  // namespace gilliant::testing
