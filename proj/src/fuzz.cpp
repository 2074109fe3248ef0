#include "gilliant/fuzz.hpp"

#include <algorithm>
#include <set>

namespace gilliant::wl {

namespace {

using Rng = std::mt19937_64;

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

const char* kProps[] = {"a", "b", "c"};

struct Ctx {
    Rng rng;
    FuzzOptions opts;
    std::vector<std::string> numVars;  // variables currently holding numbers
    std::set<std::string> reserved;    // loop counters; never assignment targets
    std::vector<std::string> objVars;  // variables that may hold object locations
    int objectsLeft = 0;
    int varCounter = 0;
    bool hasAux = false;
    std::string symParam;  // set in symbolic mode

    std::string freshVar() { return "t" + std::to_string(varCounter++); }

    Expr numExpr(int depth) {
        if (depth <= 0 || numVars.empty() || chance(rng, 0.4))
            return Expr::lit(GilValue::num(pick(rng, 0, 7)));
        Expr v = Expr::pvar(numVars[static_cast<size_t>(pick(rng, 0, static_cast<long>(numVars.size()) - 1))]);
        if (chance(rng, 0.5)) return v;
        Expr w = numExpr(depth - 1);
        switch (pick(rng, 0, 2)) {
            case 0: return Expr::binop(BinOpKind::Add, v, w);
            case 1: return Expr::binop(BinOpKind::Sub, v, w);
            default: return Expr::binop(BinOpKind::Mul, v, Expr::lit(GilValue::num(pick(rng, 0, 3))));
        }
    }

    Expr condExpr() {
        Expr l = numExpr(1);
        if (!symParam.empty() && chance(rng, 0.6)) l = Expr::pvar(symParam);
        Expr r = numExpr(1);
        Expr c = chance(rng, 0.5) ? Expr::binop(BinOpKind::Lt, l, r)
                                  : Expr::binop(BinOpKind::Eq, l, r);
        if (chance(rng, 0.2)) c = Expr::unop(UnOpKind::Not, c);
        return c;
    }
};

StmtPtr genBlock(Ctx& ctx, int depth);

StmtPtr genStmt(Ctx& ctx, int depth) {
    Rng& rng = ctx.rng;
    for (int attempt = 0; attempt < 4; ++attempt) {
        switch (pick(rng, 0, 11)) {
            case 0: {  // numeric assignment
                std::string x;
                if (chance(rng, 0.5) && !ctx.numVars.empty()) {
                    x = ctx.numVars[static_cast<size_t>(
                        pick(rng, 0, static_cast<long>(ctx.numVars.size()) - 1))];
                    if (ctx.reserved.count(x)) x = ctx.freshVar();
                } else {
                    x = ctx.freshVar();
                }
                Expr e = ctx.numExpr(2);
                if (std::find(ctx.numVars.begin(), ctx.numVars.end(), x) == ctx.numVars.end())
                    ctx.numVars.push_back(x);
                return WhileStmt::assign(x, e);
            }
            case 1: {  // object creation
                if (ctx.objectsLeft <= 0) continue;
                --ctx.objectsLeft;
                std::string x = ctx.freshVar();
                std::vector<std::pair<std::string, Expr>> fields;
                fields.emplace_back("a", ctx.numExpr(1));
                fields.emplace_back("b", ctx.numExpr(1));
                if (chance(rng, 0.4)) fields.emplace_back("c", ctx.numExpr(1));
                ctx.objVars.push_back(x);
                return WhileStmt::newObj(x, std::move(fields));
            }
            case 2: {  // lookup
                if (ctx.objVars.empty()) continue;
                std::string obj = ctx.objVars[static_cast<size_t>(
                    pick(rng, 0, static_cast<long>(ctx.objVars.size()) - 1))];
                std::string prop = kProps[pick(rng, 0, chance(rng, 0.85) ? 1 : 2)];
                std::string x = ctx.freshVar();
                ctx.numVars.push_back(x);
                return WhileStmt::lookup(x, Expr::pvar(obj), prop);
            }
            case 3: {  // mutate
                if (ctx.objVars.empty()) continue;
                std::string obj = ctx.objVars[static_cast<size_t>(
                    pick(rng, 0, static_cast<long>(ctx.objVars.size()) - 1))];
                std::string prop = kProps[pick(rng, 0, 2)];
                return WhileStmt::mutate(Expr::pvar(obj), prop, ctx.numExpr(2));
            }
            case 4: {  // dispose
                if (!ctx.opts.allowDispose || ctx.objVars.empty() || !chance(rng, 0.3)) continue;
                size_t i = static_cast<size_t>(
                    pick(rng, 0, static_cast<long>(ctx.objVars.size()) - 1));
                std::string obj = ctx.objVars[i];
                ctx.objVars.erase(ctx.objVars.begin() + static_cast<long>(i));
                return WhileStmt::dispose(Expr::pvar(obj));
            }
            case 5: {  // if
                if (depth <= 0) continue;
                Expr cond = ctx.condExpr();
                // both branches see the same scope snapshot; variables
                // introduced inside stay local to the generator's view
                Ctx snapshot = ctx;
                StmtPtr thenS = genBlock(ctx, depth - 1);
                Ctx afterThen = ctx;
                ctx.numVars = snapshot.numVars;
                ctx.objVars = snapshot.objVars;
                StmtPtr elseS = genBlock(ctx, depth - 1);
                ctx.numVars = snapshot.numVars;
                ctx.objVars = snapshot.objVars;
                ctx.objectsLeft = std::min(afterThen.objectsLeft, ctx.objectsLeft);
                return WhileStmt::ifElse(cond, thenS, elseS);
            }
            case 6: {  // bounded while loop over a fresh counter
                if (depth <= 0) continue;
                std::string i = ctx.freshVar();
                ctx.numVars.push_back(i);
                ctx.reserved.insert(i);
                long bound = pick(rng, 1, ctx.opts.maxLoopBound);
                Ctx snapshot = ctx;
                StmtPtr body = genBlock(ctx, depth - 1);
                ctx.numVars = snapshot.numVars;
                ctx.objVars = snapshot.objVars;
                ctx.reserved.erase(i);
                StmtPtr inc = WhileStmt::assign(
                    i, Expr::binop(BinOpKind::Add, Expr::pvar(i), Expr::lit(GilValue::num(1L))));
                StmtPtr loop = WhileStmt::whileLoop(
                    Expr::binop(BinOpKind::Lt, Expr::pvar(i), Expr::lit(GilValue::num(bound))),
                    WhileStmt::seq(body, inc));
                return WhileStmt::seq(WhileStmt::assign(i, Expr::lit(GilValue::num(0L))), loop);
            }
            case 7: {  // assume
                if (!chance(rng, 0.35)) continue;
                return WhileStmt::assume(ctx.condExpr());
            }
            case 8: {  // assert
                if (!ctx.opts.allowAssertFailures && !chance(rng, 0.2)) continue;
                if (!chance(rng, 0.3)) continue;
                return WhileStmt::assertStmt(ctx.condExpr());
            }
            case 9: {  // call the auxiliary procedure
                if (!ctx.opts.allowCalls || !ctx.hasAux || !chance(rng, 0.5)) continue;
                std::string x = ctx.freshVar();
                ctx.numVars.push_back(x);
                return WhileStmt::call(x, "aux", ctx.numExpr(1));
            }
            case 10: {  // skip
                if (!chance(rng, 0.2)) continue;
                return WhileStmt::skip();
            }
            case 11: {  // alias an object variable
                if (ctx.objVars.empty() || !chance(rng, 0.3)) continue;
                std::string obj = ctx.objVars[static_cast<size_t>(
                    pick(rng, 0, static_cast<long>(ctx.objVars.size()) - 1))];
                std::string x = ctx.freshVar();
                ctx.objVars.push_back(x);
                return WhileStmt::assign(x, Expr::pvar(obj));
            }
        }
    }
    return WhileStmt::assign(ctx.freshVar(), ctx.numExpr(1));
}

StmtPtr genBlock(Ctx& ctx, int depth) {
    long n = pick(ctx.rng, 1, ctx.opts.maxBlockStmts);
    StmtPtr out = nullptr;
    for (long i = 0; i < n; ++i) {
        StmtPtr s = genStmt(ctx, depth);
        out = out ? WhileStmt::seq(out, s) : s;
    }
    return out ? out : WhileStmt::skip();
}

Expr resultExpr(Ctx& ctx) {
    if (!ctx.numVars.empty() && chance(ctx.rng, 0.8))
        return ctx.numExpr(2);
    if (!ctx.objVars.empty() && chance(ctx.rng, 0.5))
        return Expr::pvar(ctx.objVars[static_cast<size_t>(
            pick(ctx.rng, 0, static_cast<long>(ctx.objVars.size()) - 1))]);
    return Expr::lit(GilValue::num(pick(ctx.rng, 0, 9)));
}

}  // namespace

WhileProgram fuzzProgram(uint64_t seed, const FuzzOptions& opts) {
    Ctx ctx;
    ctx.rng.seed(seed);
    ctx.opts = opts;

    WhileProgram out;

    if (opts.allowCalls && chance(ctx.rng, 0.6)) {
        Ctx aux;
        aux.rng.seed(seed ^ 0x9e3779b97f4a7c15ull);
        aux.opts = opts;
        aux.opts.allowCalls = false;  // no recursion in fuzzed programs
        aux.opts.maxBlockStmts = 3;
        aux.numVars.push_back("n");
        aux.objectsLeft = 1;
        StmtPtr body = genBlock(aux, 1);
        body = WhileStmt::seq(body, WhileStmt::ret(aux.numExpr(2)));
        out.procs.push_back({"aux", "n", body});
        ctx.hasAux = true;
    }

    ctx.objectsLeft = opts.maxObjects;
    ctx.numVars.push_back("x");
    if (opts.symbolicMode) ctx.symParam = "x";
    StmtPtr body = genBlock(ctx, opts.maxDepth);
    body = WhileStmt::seq(body, WhileStmt::ret(resultExpr(ctx)));
    out.procs.push_back({"main", "x", body});
    return out;
}

StmtPtr fuzzStmt(uint64_t seed, int maxDepth) {
    Ctx ctx;
    ctx.rng.seed(seed);
    ctx.opts = FuzzOptions{};
    ctx.numVars = {"x", "y", "z"};
    ctx.objVars = {"o"};
    ctx.objectsLeft = 2;
    ctx.hasAux = false;
    ctx.opts.allowCalls = false;
    return genStmt(ctx, maxDepth);
}

}  // namespace gilliant::wl
