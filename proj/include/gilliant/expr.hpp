#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "gilliant/value.hpp"

namespace gilliant {

/// Expression trees over values, program variables, and logical variables.
/// One representation serves both roles: GIL program expressions carry no
/// LVar nodes, logical expressions carry no PVar nodes once a store has been
/// substituted in. Both invariants are enforced where they matter, not here.
///
/// Expr is an immutable value; copies share structure.
class Expr {
public:
    enum class Kind { Lit, PVar, LVar, UnOp, BinOp };

    Expr() : Expr(lit(GilValue::boolean(false))) {}

    static Expr lit(GilValue v);
    static Expr pvar(std::string name);
    static Expr lvar(std::string name);
    static Expr unop(UnOpKind op, Expr e);
    static Expr binop(BinOpKind op, Expr l, Expr r);

    Kind kind() const { return n_->kind; }
    bool isLit() const { return kind() == Kind::Lit; }
    bool isPVar() const { return kind() == Kind::PVar; }
    bool isLVar() const { return kind() == Kind::LVar; }
    bool isUnOp() const { return kind() == Kind::UnOp; }
    bool isBinOp() const { return kind() == Kind::BinOp; }

    const GilValue& litVal() const { return n_->v; }
    const std::string& varName() const { return n_->name; }
    UnOpKind unOp() const { return n_->uop; }
    BinOpKind binOp() const { return n_->bop; }
    Expr arg() const { return Expr(n_->a); }
    Expr lhs() const { return Expr(n_->a); }
    Expr rhs() const { return Expr(n_->b); }

    bool isLitBool(bool b) const { return isLit() && litVal().isBool() && litVal().asBool() == b; }

    int compare(const Expr& o) const;
    bool operator==(const Expr& o) const { return compare(o) == 0; }
    bool operator!=(const Expr& o) const { return compare(o) != 0; }
    bool operator<(const Expr& o) const { return compare(o) < 0; }

    void collectLVars(std::set<std::string>& out) const;
    void collectPVars(std::set<std::string>& out) const;
    std::set<std::string> freeLVars() const;
    bool hasPVar() const;

    std::string show() const;

private:
    struct Node {
        Kind kind;
        GilValue v;                 // Lit
        std::string name;           // PVar / LVar
        UnOpKind uop{};             // UnOp
        BinOpKind bop{};            // BinOp
        std::shared_ptr<const Node> a, b;
    };

    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    std::shared_ptr<const Node> n_;
};

/// Substitute program variables by their store images. Fails with the name of
/// the first unbound variable.
struct SubstResult {
    std::optional<Expr> expr;
    std::string unbound;  // set when expr is empty
};
SubstResult substPVars(const Expr& e, const std::map<std::string, Expr>& store);

/// Substitute logical variables; names missing from the map are left intact.
Expr substLVarsPartial(const Expr& e, const std::map<std::string, Expr>& subst);

/// Substitute both program and logical variables; names missing are left intact.
Expr substMixedPartial(const Expr& e, const std::map<std::string, Expr>& subst);

/// Generic evaluation with leaf resolvers. Returns nullopt when a resolver
/// fails or an operator is ill-typed. And/Or short-circuit left to right.
using LeafResolver = std::function<std::optional<GilValue>(const std::string&)>;
std::optional<GilValue> evalExpr(const Expr& e, const LeafResolver& pvar, const LeafResolver& lvar);

}  // namespace gilliant
