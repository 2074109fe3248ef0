#include "gilliant/while_compile.hpp"

#include "gilliant/while_memory.hpp"

namespace gilliant::wl {

namespace {

Expr pairArg(const Expr& loc, const std::string& prop) {
    return Expr::binop(BinOpKind::Cons, loc,
                       Expr::binop(BinOpKind::Cons, Expr::lit(GilValue::str(prop)),
                                   Expr::lit(GilValue::list({}))));
}

Expr tripleArg(const Expr& loc, const std::string& prop, const Expr& val) {
    return Expr::binop(
        BinOpKind::Cons, loc,
        Expr::binop(BinOpKind::Cons, Expr::lit(GilValue::str(prop)),
                    Expr::binop(BinOpKind::Cons, val, Expr::lit(GilValue::list({})))));
}

Expr notOf(const Expr& e) { return Expr::unop(UnOpKind::Not, e); }

}  // namespace

CompiledStmt WhileCompiler::compileStmt(const WhileStmt& s, int pc0) {
    using K = WhileStmt::Kind;
    std::vector<GilCommand> out;
    switch (s.kind) {
        case K::Assign:
            out.push_back(GilCommand::assign(s.x, s.e));
            return {std::move(out), pc0 + 1};
        case K::Skip:
            out.push_back(GilCommand::ifgoto(Expr::lit(GilValue::boolean(true)), pc0 + 1));
            return {std::move(out), pc0 + 1};
        case K::Seq: {
            CompiledStmt a = compileStmt(*s.s1, pc0);
            CompiledStmt b = compileStmt(*s.s2, a.next);
            out = std::move(a.cmds);
            out.insert(out.end(), b.cmds.begin(), b.cmds.end());
            return {std::move(out), b.next};
        }
        case K::If: {
            CompiledStmt thenC = compileStmt(*s.s1, pc0 + 1);
            CompiledStmt elseC = compileStmt(*s.s2, thenC.next + 1);
            out.push_back(GilCommand::ifgoto(notOf(s.e), thenC.next + 1));
            out.insert(out.end(), thenC.cmds.begin(), thenC.cmds.end());
            out.push_back(GilCommand::ifgoto(Expr::lit(GilValue::boolean(true)), elseC.next));
            out.insert(out.end(), elseC.cmds.begin(), elseC.cmds.end());
            return {std::move(out), elseC.next};
        }
        case K::While: {
            CompiledStmt body = compileStmt(*s.s1, pc0 + 1);
            out.push_back(GilCommand::ifgoto(notOf(s.e), body.next + 1));
            out.insert(out.end(), body.cmds.begin(), body.cmds.end());
            out.push_back(GilCommand::ifgoto(Expr::lit(GilValue::boolean(true)), pc0));
            return {std::move(out), body.next + 1};
        }
        case K::Call:
            out.push_back(GilCommand::call(s.x, Expr::lit(GilValue::proc(s.fname)), s.e));
            return {std::move(out), pc0 + 1};
        case K::Return:
            out.push_back(GilCommand::ret(s.e));
            return {std::move(out), pc0 + 1};
        case K::Assume:
            out.push_back(GilCommand::ifgoto(s.e, pc0 + 2));
            out.push_back(GilCommand::vanish());
            return {std::move(out), pc0 + 2};
        case K::Assert:
            out.push_back(GilCommand::ifgoto(s.e, pc0 + 2));
            out.push_back(GilCommand::fail(s.e));
            return {std::move(out), pc0 + 2};
        case K::New: {
            out.push_back(GilCommand::symb(s.x, siteCounter_++));
            for (const auto& [prop, init] : s.fields)
                out.push_back(GilCommand::actionCmd("_", kMutate,
                                                    tripleArg(Expr::pvar(s.x), prop, init)));
            return {std::move(out), pc0 + 1 + static_cast<int>(s.fields.size())};
        }
        case K::Lookup:
            out.push_back(GilCommand::actionCmd(s.x, kLookup, pairArg(s.e, s.prop)));
            return {std::move(out), pc0 + 1};
        case K::Mutate:
            out.push_back(GilCommand::actionCmd("_", kMutate, tripleArg(s.e, s.prop, s.e2)));
            return {std::move(out), pc0 + 1};
        case K::Dispose:
            out.push_back(GilCommand::actionCmd("_", kDispose, s.e));
            return {std::move(out), pc0 + 1};
        case K::Fold:
            out.push_back(GilCommand::fold(s.fname, s.e, s.index, s.bindings));
            return {std::move(out), pc0 + 1};
        case K::Unfold:
            out.push_back(GilCommand::unfold(s.fname, s.e));
            return {std::move(out), pc0 + 1};
        case K::SpecCall:
            out.push_back(GilCommand::specCall(s.x, Expr::lit(GilValue::proc(s.fname)), s.e,
                                               s.index, s.bindings));
            return {std::move(out), pc0 + 1};
    }
    return {std::move(out), pc0};
}

AnnotatedProgram WhileCompiler::compileProgram(const WhileProgram& wp) {
    AnnotatedProgram out;
    for (const WhileProc& p : wp.procs) {
        CompiledStmt body = compileStmt(*p.body, 0);
        body.cmds.push_back(GilCommand::ret(Expr::lit(GilValue::num(0L))));
        out.prog.procs[p.name] = GilProc{p.name, p.param, std::move(body.cmds)};
    }
    out.predicates = wp.predicates;
    out.specs = wp.specs;
    return out;
}

namespace {

void walkSites(const WhileStmt& s, int& counter, std::map<const WhileStmt*, int>& out) {
    using K = WhileStmt::Kind;
    switch (s.kind) {
        case K::New: out[&s] = counter++; return;
        case K::Seq:
        case K::If:
            walkSites(*s.s1, counter, out);
            walkSites(*s.s2, counter, out);
            return;
        case K::While: walkSites(*s.s1, counter, out); return;
        default: return;
    }
}

}  // namespace

std::map<const WhileStmt*, int> assignSites(const WhileProgram& wp) {
    std::map<const WhileStmt*, int> out;
    int counter = 0;
    for (const WhileProc& p : wp.procs) walkSites(*p.body, counter, out);
    return out;
}

}  // namespace gilliant::wl
