#include "gilliant/expr.hpp"

namespace gilliant {

Expr Expr::lit(GilValue v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Lit;
    n->v = std::move(v);
    return Expr(std::move(n));
}

Expr Expr::pvar(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::PVar;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::lvar(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::LVar;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::unop(UnOpKind op, Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::UnOp;
    n->uop = op;
    n->a = e.n_;
    return Expr(std::move(n));
}

Expr Expr::binop(BinOpKind op, Expr l, Expr r) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::BinOp;
    n->bop = op;
    n->a = l.n_;
    n->b = r.n_;
    return Expr(std::move(n));
}

int Expr::compare(const Expr& o) const {
    if (n_ == o.n_) return 0;
    if (kind() != o.kind()) return kind() < o.kind() ? -1 : 1;
    switch (kind()) {
        case Kind::Lit: return litVal().compare(o.litVal());
        case Kind::PVar:
        case Kind::LVar: return varName().compare(o.varName());
        case Kind::UnOp: {
            if (unOp() != o.unOp()) return unOp() < o.unOp() ? -1 : 1;
            return arg().compare(o.arg());
        }
        case Kind::BinOp: {
            if (binOp() != o.binOp()) return binOp() < o.binOp() ? -1 : 1;
            int c = lhs().compare(o.lhs());
            if (c != 0) return c;
            return rhs().compare(o.rhs());
        }
    }
    return 0;
}

void Expr::collectLVars(std::set<std::string>& out) const {
    switch (kind()) {
        case Kind::LVar: out.insert(varName()); return;
        case Kind::UnOp: arg().collectLVars(out); return;
        case Kind::BinOp:
            lhs().collectLVars(out);
            rhs().collectLVars(out);
            return;
        default: return;
    }
}

void Expr::collectPVars(std::set<std::string>& out) const {
    switch (kind()) {
        case Kind::PVar: out.insert(varName()); return;
        case Kind::UnOp: arg().collectPVars(out); return;
        case Kind::BinOp:
            lhs().collectPVars(out);
            rhs().collectPVars(out);
            return;
        default: return;
    }
}

std::set<std::string> Expr::freeLVars() const {
    std::set<std::string> out;
    collectLVars(out);
    return out;
}

bool Expr::hasPVar() const {
    switch (kind()) {
        case Kind::PVar: return true;
        case Kind::UnOp: return arg().hasPVar();
        case Kind::BinOp: return lhs().hasPVar() || rhs().hasPVar();
        default: return false;
    }
}

std::string Expr::show() const {
    switch (kind()) {
        case Kind::Lit: return litVal().show();
        case Kind::PVar:
        case Kind::LVar: return varName();
        case Kind::UnOp: {
            std::string inner = arg().show();
            if (!arg().isLit() && !arg().isPVar() && !arg().isLVar()) inner = "(" + inner + ")";
            return std::string(unOpName(unOp())) + " " + inner;
        }
        case Kind::BinOp: {
            auto wrap = [](const Expr& e) {
                std::string s = e.show();
                if (e.isBinOp() || e.isUnOp()) return "(" + s + ")";
                return s;
            };
            if (binOp() == BinOpKind::Nth)
                return std::string("nth(") + lhs().show() + ", " + rhs().show() + ")";
            return wrap(lhs()) + " " + binOpName(binOp()) + " " + wrap(rhs());
        }
    }
    return "?";
}

namespace {

Expr substGeneric(const Expr& e, const std::map<std::string, Expr>& subst, bool onPVars, bool onLVars) {
    switch (e.kind()) {
        case Expr::Kind::Lit: return e;
        case Expr::Kind::PVar:
            if (onPVars) {
                auto it = subst.find(e.varName());
                if (it != subst.end()) return it->second;
            }
            return e;
        case Expr::Kind::LVar:
            if (onLVars) {
                auto it = subst.find(e.varName());
                if (it != subst.end()) return it->second;
            }
            return e;
        case Expr::Kind::UnOp: {
            Expr a = substGeneric(e.arg(), subst, onPVars, onLVars);
            if (a == e.arg()) return e;
            return Expr::unop(e.unOp(), a);
        }
        case Expr::Kind::BinOp: {
            Expr l = substGeneric(e.lhs(), subst, onPVars, onLVars);
            Expr r = substGeneric(e.rhs(), subst, onPVars, onLVars);
            if (l == e.lhs() && r == e.rhs()) return e;
            return Expr::binop(e.binOp(), l, r);
        }
    }
    return e;
}

}  // namespace

SubstResult substPVars(const Expr& e, const std::map<std::string, Expr>& store) {
    std::set<std::string> pvars;
    e.collectPVars(pvars);
    for (const auto& x : pvars)
        if (!store.count(x)) return {std::nullopt, x};
    return {substGeneric(e, store, true, false), ""};
}

Expr substLVarsPartial(const Expr& e, const std::map<std::string, Expr>& subst) {
    return substGeneric(e, subst, false, true);
}

Expr substMixedPartial(const Expr& e, const std::map<std::string, Expr>& subst) {
    return substGeneric(e, subst, true, true);
}

std::optional<GilValue> evalExpr(const Expr& e, const LeafResolver& pvar, const LeafResolver& lvar) {
    switch (e.kind()) {
        case Expr::Kind::Lit: return e.litVal();
        case Expr::Kind::PVar: return pvar ? pvar(e.varName()) : std::nullopt;
        case Expr::Kind::LVar: return lvar ? lvar(e.varName()) : std::nullopt;
        case Expr::Kind::UnOp: {
            auto a = evalExpr(e.arg(), pvar, lvar);
            if (!a) return std::nullopt;
            return applyUnOp(e.unOp(), *a);
        }
        case Expr::Kind::BinOp: {
            auto l = evalExpr(e.lhs(), pvar, lvar);
            if (!l) return std::nullopt;
            // left-biased short circuit: a decided And/Or never evaluates rhs
            if (e.binOp() == BinOpKind::And && l->isBool() && !l->asBool())
                return GilValue::boolean(false);
            if (e.binOp() == BinOpKind::Or && l->isBool() && l->asBool())
                return GilValue::boolean(true);
            auto r = evalExpr(e.rhs(), pvar, lvar);
            if (!r) return std::nullopt;
            return applyBinOp(e.binOp(), *l, *r);
        }
    }
    return std::nullopt;
}

}  // namespace gilliant
