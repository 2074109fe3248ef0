#pragma once

#include <random>

#include "gilliant/logic.hpp"

namespace gilliant::testing {

// expression-building shorthand for tests
inline Expr num(long n) { return Expr::lit(GilValue::num(n)); }
inline Expr str(const std::string& s) { return Expr::lit(GilValue::str(s)); }
inline Expr boolean(bool b) { return Expr::lit(GilValue::boolean(b)); }
inline Expr sym(const std::string& id) { return Expr::lit(GilValue::symbol(id)); }
inline Expr lv(const std::string& n) { return Expr::lvar(n); }
inline Expr pv(const std::string& n) { return Expr::pvar(n); }
inline Expr add(Expr a, Expr b) { return Expr::binop(BinOpKind::Add, std::move(a), std::move(b)); }
inline Expr sub(Expr a, Expr b) { return Expr::binop(BinOpKind::Sub, std::move(a), std::move(b)); }
inline Expr mul(Expr a, Expr b) { return Expr::binop(BinOpKind::Mul, std::move(a), std::move(b)); }
inline Expr eq(Expr a, Expr b) { return Expr::binop(BinOpKind::Eq, std::move(a), std::move(b)); }
inline Expr lt(Expr a, Expr b) { return Expr::binop(BinOpKind::Lt, std::move(a), std::move(b)); }
inline Expr band(Expr a, Expr b) { return Expr::binop(BinOpKind::And, std::move(a), std::move(b)); }
inline Expr bor(Expr a, Expr b) { return Expr::binop(BinOpKind::Or, std::move(a), std::move(b)); }
inline Expr bnot(Expr a) { return Expr::unop(UnOpKind::Not, std::move(a)); }
inline Expr neg(Expr a) { return Expr::unop(UnOpKind::Neg, std::move(a)); }
inline Expr hd(Expr a) { return Expr::unop(UnOpKind::Head, std::move(a)); }
inline Expr tl(Expr a) { return Expr::unop(UnOpKind::Tail, std::move(a)); }
inline Expr len(Expr a) { return Expr::unop(UnOpKind::Len, std::move(a)); }
inline Expr cons(Expr a, Expr b) { return Expr::binop(BinOpKind::Cons, std::move(a), std::move(b)); }

inline Expr listOf(std::vector<Expr> parts) {
    Expr out = Expr::lit(GilValue::list({}));
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) out = cons(*it, out);
    return simplify(out);
}

using Rng = std::mt19937_64;

inline long randInt(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

}  // namespace gilliant::testing
