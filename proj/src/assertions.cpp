#include "gilliant/assertions.hpp"

namespace gilliant {

Assertion Assertion::emp() {
    static const Assertion e{std::make_shared<Node>()};
    return e;
}

Assertion Assertion::pure(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pure;
    n->e = std::move(e);
    return Assertion(std::move(n));
}

Assertion Assertion::core(std::string pred, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::CorePred;
    n->pred = std::move(pred);
    n->e = std::move(arg);
    return Assertion(std::move(n));
}

Assertion Assertion::user(std::string pred, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::UserPred;
    n->pred = std::move(pred);
    n->e = std::move(arg);
    return Assertion(std::move(n));
}

Assertion Assertion::star(Assertion l, Assertion r) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Star;
    n->l = l.n_;
    n->r = r.n_;
    return Assertion(std::move(n));
}

Assertion Assertion::starAll(const std::vector<Assertion>& parts) {
    if (parts.empty()) return emp();
    Assertion out = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) out = star(out, parts[i]);
    return out;
}

std::vector<Assertion> Assertion::flatten() const {
    std::vector<Assertion> out;
    if (kind() == Kind::Star) {
        for (const Assertion& p : lhs().flatten()) out.push_back(p);
        for (const Assertion& p : rhs().flatten()) out.push_back(p);
        return out;
    }
    if (!isEmp()) out.push_back(*this);
    return out;
}

void Assertion::collectLVars(std::set<std::string>& out) const {
    switch (kind()) {
        case Kind::Emp: return;
        case Kind::Pure:
        case Kind::CorePred:
        case Kind::UserPred: expr().collectLVars(out); return;
        case Kind::Star:
            lhs().collectLVars(out);
            rhs().collectLVars(out);
            return;
    }
}

std::set<std::string> Assertion::freeLVars() const {
    std::set<std::string> out;
    collectLVars(out);
    return out;
}

void Assertion::collectPVars(std::set<std::string>& out) const {
    switch (kind()) {
        case Kind::Emp: return;
        case Kind::Pure:
        case Kind::CorePred:
        case Kind::UserPred: expr().collectPVars(out); return;
        case Kind::Star:
            lhs().collectPVars(out);
            rhs().collectPVars(out);
            return;
    }
}

Assertion Assertion::substLVars(const std::map<std::string, Expr>& subst) const {
    switch (kind()) {
        case Kind::Emp: return *this;
        case Kind::Pure: return pure(substLVarsPartial(expr(), subst));
        case Kind::CorePred: return core(pred(), substLVarsPartial(expr(), subst));
        case Kind::UserPred: return user(pred(), substLVarsPartial(expr(), subst));
        case Kind::Star: return star(lhs().substLVars(subst), rhs().substLVars(subst));
    }
    return *this;
}

bool Assertion::operator==(const Assertion& o) const {
    if (n_ == o.n_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case Kind::Emp: return true;
        case Kind::Pure: return expr() == o.expr();
        case Kind::CorePred:
        case Kind::UserPred: return pred() == o.pred() && expr() == o.expr();
        case Kind::Star: return lhs() == o.lhs() && rhs() == o.rhs();
    }
    return false;
}

std::string Assertion::show() const {
    switch (kind()) {
        case Kind::Emp: return "emp";
        case Kind::Pure: return "(" + expr().show() + ")";
        case Kind::CorePred:
        case Kind::UserPred: return pred() + "<" + expr().show() + ">";
        case Kind::Star: return lhs().show() + " * " + rhs().show();
    }
    return "?";
}

std::string Spec::show() const {
    return "{ " + pre.show() + " } " + proc + "(" + param + ") { " + post.show() + " ; " +
           ret.show() + " }";
}

}  // namespace gilliant
