#include "gilliant/while_memory.hpp"

#include <algorithm>
#include <sstream>

namespace gilliant::wl {

const char* const kLookup = "lookup";
const char* const kMutate = "mutate";
const char* const kDispose = "dispose";
const char* const kSetCell = "setCell";
const char* const kGetCell = "getCell";
const char* const kCellPred = "cell";

std::optional<GilValue> ConcreteWhileMemory::get(const std::string& loc,
                                                 const std::string& prop) const {
    auto it = cells_.find({loc, prop});
    if (it == cells_.end()) return std::nullopt;
    return it->second;
}

void ConcreteWhileMemory::set(const std::string& loc, const std::string& prop, GilValue v) {
    cells_[{loc, prop}] = std::move(v);
}

bool ConcreteWhileMemory::erase(const std::string& loc, const std::string& prop) {
    return cells_.erase({loc, prop}) > 0;
}

std::string ConcreteWhileMemory::show() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, v] : cells_) {
        if (!first) os << ", ";
        first = false;
        os << "(" << k.first << ", \"" << k.second << "\") -> " << v.show();
    }
    os << "}";
    return os.str();
}

namespace {

struct TripleArg {
    std::string loc;
    std::string prop;
    GilValue val;
};

std::optional<std::pair<std::string, std::string>> locProp(const GilValue& arg) {
    if (!arg.isList() || arg.asList().size() != 2) return std::nullopt;
    const auto& xs = arg.asList();
    if (!xs[0].isSymb() || !xs[1].isStr()) return std::nullopt;
    return std::make_pair(xs[0].symbolId(), xs[1].asStr());
}

std::optional<TripleArg> locPropVal(const GilValue& arg) {
    if (!arg.isList() || arg.asList().size() != 3) return std::nullopt;
    const auto& xs = arg.asList();
    if (!xs[0].isSymb() || !xs[1].isStr()) return std::nullopt;
    return TripleArg{xs[0].symbolId(), xs[1].asStr(), xs[2]};
}

}  // namespace

std::optional<std::pair<ConcreteWhileMemory, GilValue>> ceaWhile(const std::string& action,
                                                                 const ConcreteWhileMemory& mem,
                                                                 const GilValue& arg) {
    if (action == kLookup) {
        auto lp = locProp(arg);
        if (!lp) return std::nullopt;
        auto v = mem.get(lp->first, lp->second);
        if (!v) return std::nullopt;
        return std::make_pair(mem, *v);
    }
    if (action == kMutate) {
        auto t = locPropVal(arg);
        if (!t) return std::nullopt;
        ConcreteWhileMemory next = mem;
        next.set(t->loc, t->prop, t->val);
        return std::make_pair(std::move(next), t->val);
    }
    if (action == kDispose) {
        if (!arg.isSymb()) return std::nullopt;
        ConcreteWhileMemory next;
        for (const auto& [k, v] : mem.cells())
            if (k.first != arg.symbolId()) next.set(k.first, k.second, v);
        return std::make_pair(std::move(next), GilValue::boolean(true));
    }
    if (action == kSetCell) {
        auto t = locPropVal(arg);
        if (!t) return std::nullopt;
        if (mem.get(t->loc, t->prop)) return std::nullopt;  // resource already present
        ConcreteWhileMemory next = mem;
        next.set(t->loc, t->prop, t->val);
        return std::make_pair(std::move(next), GilValue::boolean(true));
    }
    if (action == kGetCell) {
        auto t = locPropVal(arg);
        if (!t) return std::nullopt;
        auto v = mem.get(t->loc, t->prop);
        if (!v || *v != t->val) return std::nullopt;
        ConcreteWhileMemory next = mem;
        next.erase(t->loc, t->prop);
        return std::make_pair(std::move(next), GilValue::boolean(true));
    }
    return std::nullopt;
}

std::set<std::string> SymbolicWhileMemory::freeLVars() const {
    std::set<std::string> out;
    for (const SymCell& c : cells_) {
        c.loc.collectLVars(out);
        c.val.collectLVars(out);
    }
    return out;
}

std::string SymbolicWhileMemory::showCanonical() const {
    std::vector<std::string> parts;
    for (const SymCell& c : cells_) parts.push_back(c.show());
    std::sort(parts.begin(), parts.end());
    std::string out = "{";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out + "}";
}

std::string SymbolicWhileMemory::show() const {
    std::string out = "{";
    for (size_t i = 0; i < cells_.size(); ++i) {
        if (i) out += ", ";
        out += cells_[i].show();
    }
    return out + "}";
}

namespace {

Expr eq(const Expr& a, const Expr& b) { return Expr::binop(BinOpKind::Eq, a, b); }
Expr neq(const Expr& a, const Expr& b) { return Expr::unop(UnOpKind::Not, eq(a, b)); }

struct ArgTriple {
    Expr loc;
    std::string prop;
    Expr val;
};

// symbolic action args arrive as list expressions [loc, "prop"] / [loc, "prop", val]
std::optional<std::pair<Expr, std::string>> symLocProp(const Expr& arg) {
    auto sp = listSpine(simplify(arg));
    if (!sp || sp->rest || sp->elems.size() != 2) return std::nullopt;
    const Expr& p = sp->elems[1];
    if (!p.isLit() || !p.litVal().isStr()) return std::nullopt;
    return std::make_pair(sp->elems[0], p.litVal().asStr());
}

std::optional<ArgTriple> symLocPropVal(const Expr& arg) {
    auto sp = listSpine(simplify(arg));
    if (!sp || sp->rest || sp->elems.size() != 3) return std::nullopt;
    const Expr& p = sp->elems[1];
    if (!p.isLit() || !p.litVal().isStr()) return std::nullopt;
    return ArgTriple{sp->elems[0], p.litVal().asStr(), sp->elems[2]};
}

enum class Match { Entailed, Possible, No };

Match matchLoc(const Solver& solver, const PathCondition& pc, const Expr& a, const Expr& b) {
    Expr equal = eq(a, b);
    if (solver.entails(pc, equal)) return Match::Entailed;
    PathCondition q = pc;
    q.push_back(equal);
    return solver.isSat(q) == SatResult::Unsat ? Match::No : Match::Possible;
}

}  // namespace

SymActionResult seaWhile(const std::string& action, const SymbolicWhileMemory& mem,
                         const Expr& arg, const PathCondition& pc, const Solver& solver,
                         FixContext* fixCtx) {
    const auto& cells = mem.cells();

    auto removeAt = [&](size_t idx) {
        SymbolicWhileMemory next;
        for (size_t i = 0; i < cells.size(); ++i)
            if (i != idx) next.add(cells[i]);
        return next;
    };

    if (action == kLookup || action == kGetCell) {
        std::optional<ArgTriple> want;
        if (action == kLookup) {
            auto lp = symLocProp(arg);
            if (!lp)
                return SymActionResult::err(EngineError::Kind::ExprEval,
                                            std::string(action) + ": ill-shaped argument " +
                                                arg.show());
            want = ArgTriple{lp->first, lp->second, Expr()};
        } else {
            want = symLocPropVal(arg);
            if (!want)
                return SymActionResult::err(EngineError::Kind::ExprEval,
                                            std::string(action) + ": ill-shaped argument " +
                                                arg.show());
        }

        // a getCell match constrains the value as well as the location
        auto cellEquality = [&](const SymCell& c) {
            Expr equal = eq(want->loc, c.loc);
            if (action == kGetCell)
                equal = Expr::binop(BinOpKind::And, equal, eq(want->val, c.val));
            return equal;
        };

        std::vector<size_t> possible;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].prop != want->prop) continue;
            Expr equal = cellEquality(cells[i]);
            if (solver.entails(pc, equal)) {
                if (action == kLookup)
                    return SymActionResult::one(mem, cells[i].val);
                return SymActionResult::one(removeAt(i), Expr::lit(GilValue::boolean(true)));
            }
            PathCondition q = pc;
            q.push_back(equal);
            if (solver.isSat(q) != SatResult::Unsat) possible.push_back(i);
        }
        if (!possible.empty()) {
            SymActionResult r;
            for (size_t i : possible) {
                Expr equal = cellEquality(cells[i]);
                if (action == kLookup)
                    r.branches.push_back({mem, cells[i].val, {equal}});
                else
                    r.branches.push_back({removeAt(i), Expr::lit(GilValue::boolean(true)), {equal}});
            }
            return r;
        }
        // provably no matching cell
        if (fixCtx) {
            SymActionResult r;
            Expr missingVal = action == kLookup ? Expr::lvar(fixCtx->freshLVar()) : want->val;
            Expr cellArg = Expr::binop(
                BinOpKind::Cons, want->loc,
                Expr::binop(BinOpKind::Cons, Expr::lit(GilValue::str(want->prop)),
                            Expr::binop(BinOpKind::Cons, missingVal,
                                        Expr::lit(GilValue::list({})))));
            r.fixes.push_back(Fix::core(kCellPred, simplify(cellArg)));
            return r;
        }
        return SymActionResult::err(EngineError::Kind::MissingResource,
                                    std::string(action) + ": no cell for property \"" +
                                        want->prop + "\" at " + want->loc.show());
    }

    if (action == kMutate) {
        auto t = symLocPropVal(arg);
        if (!t)
            return SymActionResult::err(EngineError::Kind::ExprEval,
                                        "mutate: ill-shaped argument " + arg.show());
        std::vector<size_t> possible;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].prop != t->prop) continue;
            Match mres = matchLoc(solver, pc, t->loc, cells[i].loc);
            if (mres == Match::Entailed) {
                SymbolicWhileMemory next = removeAt(i);
                next.add({cells[i].loc, t->prop, t->val});
                return SymActionResult::one(std::move(next), Expr::lit(GilValue::boolean(true)));
            }
            if (mres == Match::Possible) possible.push_back(i);
        }
        SymActionResult r;
        for (size_t i : possible) {
            SymbolicWhileMemory next = removeAt(i);
            next.add({cells[i].loc, t->prop, t->val});
            r.branches.push_back({std::move(next), Expr::lit(GilValue::boolean(true)),
                                  {eq(t->loc, cells[i].loc)}});
        }
        // the absent world: provably distinct from every possible candidate
        PathCondition distinct;
        for (size_t i : possible) distinct.push_back(neq(t->loc, cells[i].loc));
        SymbolicWhileMemory added = mem;
        added.add({t->loc, t->prop, t->val});
        r.branches.push_back({std::move(added), Expr::lit(GilValue::boolean(true)),
                              std::move(distinct)});
        return r;
    }

    if (action == kDispose) {
        Expr loc = simplify(arg);
        SymbolicWhileMemory kept;
        PathCondition ext;
        for (const SymCell& c : cells) {
            Match mres = matchLoc(solver, pc, loc, c.loc);
            if (mres == Match::Entailed) continue;  // split off and dropped
            kept.add(c);
            // keeping an undecided cell commits this branch to the disequality
            if (mres == Match::Possible) ext.push_back(neq(loc, c.loc));
        }
        return SymActionResult::one(std::move(kept), Expr::lit(GilValue::boolean(true)),
                                    std::move(ext));
    }

    if (action == kSetCell) {
        auto t = symLocPropVal(arg);
        if (!t)
            return SymActionResult::err(EngineError::Kind::ExprEval,
                                        "setCell: ill-shaped argument " + arg.show());
        PathCondition ext;
        for (const SymCell& c : cells) {
            if (c.prop != t->prop) continue;
            Match mres = matchLoc(solver, pc, t->loc, c.loc);
            if (mres == Match::Entailed)
                return SymActionResult::err(EngineError::Kind::Unfixable,
                                            "setCell: cell for property \"" + t->prop +
                                                "\" already present at " + t->loc.show());
            if (mres == Match::Possible) ext.push_back(neq(t->loc, c.loc));
        }
        SymbolicWhileMemory next = mem;
        next.add({t->loc, t->prop, t->val});
        return SymActionResult::one(std::move(next), Expr::lit(GilValue::boolean(true)),
                                    std::move(ext));
    }

    return SymActionResult::err(EngineError::Kind::Internal, "unknown action " + action);
}

std::optional<ConcreteWhileMemory> interpretMemory(const SymbolicWhileMemory& mem,
                                                   const LogicalEnv& env) {
    ConcreteWhileMemory out;
    for (const SymCell& c : mem.cells()) {
        auto loc = evalUnder(c.loc, env);
        auto val = evalUnder(c.val, env);
        if (!loc || !val || !loc->isSymb()) return std::nullopt;
        if (out.get(loc->symbolId(), c.prop)) return std::nullopt;  // disjoint union undefined
        out.set(loc->symbolId(), c.prop, *val);
    }
    return out;
}

bool memWellFormed(const SymbolicWhileMemory& mem, const PathCondition& pc, const Solver& solver) {
    const auto& cells = mem.cells();
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j) {
            if (cells[i].prop != cells[j].prop) continue;
            if (solver.entails(pc, Expr::binop(BinOpKind::Eq, cells[i].loc, cells[j].loc)))
                return false;
        }
    return true;
}

}  // namespace gilliant::wl
