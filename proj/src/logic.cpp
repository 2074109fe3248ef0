#include "gilliant/logic.hpp"

#include <algorithm>
#include <sstream>

namespace gilliant {

std::string showPc(const PathCondition& pc) {
    if (pc.empty()) return "true";
    std::string out;
    for (size_t i = 0; i < pc.size(); ++i) {
        if (i) out += " /\\ ";
        out += pc[i].show();
    }
    return out;
}

std::set<std::string> pcFreeLVars(const PathCondition& pc) {
    std::set<std::string> out;
    for (const Expr& e : pc) e.collectLVars(out);
    return out;
}

std::optional<ListSpine> listSpine(const Expr& e) {
    if (e.isLit() && e.litVal().isList()) {
        ListSpine sp;
        for (const GilValue& v : e.litVal().asList()) sp.elems.push_back(Expr::lit(v));
        return sp;
    }
    if (e.isBinOp() && e.binOp() == BinOpKind::Cons) {
        auto tail = listSpine(e.rhs());
        if (!tail) {
            ListSpine sp;
            sp.elems.push_back(e.lhs());
            sp.rest = e.rhs();
            return sp;
        }
        tail->elems.insert(tail->elems.begin(), e.lhs());
        return tail;
    }
    if (e.isBinOp() && e.binOp() == BinOpKind::LCat) {
        auto l = listSpine(e.lhs());
        if (l && !l->rest) {
            auto r = listSpine(e.rhs());
            if (!r) {
                l->rest = e.rhs();
                return l;
            }
            l->elems.insert(l->elems.end(), r->elems.begin(), r->elems.end());
            l->rest = r->rest;
            return l;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

/// Rebuild a canonical expression from a spine: a literal list when every
/// element is literal and there is no remainder, otherwise a cons chain.
Expr rebuildSpine(const std::vector<Expr>& elems, const std::optional<Expr>& rest) {
    bool allLit = !rest.has_value();
    for (const Expr& e : elems)
        if (!e.isLit()) allLit = false;
    if (allLit) {
        GilValue::List xs;
        for (const Expr& e : elems) xs.push_back(e.litVal());
        return Expr::lit(GilValue::list(std::move(xs)));
    }
    Expr out = rest ? *rest : Expr::lit(GilValue::list({}));
    for (auto it = elems.rbegin(); it != elems.rend(); ++it)
        out = Expr::binop(BinOpKind::Cons, *it, out);
    return out;
}

bool isAtomLeaf(const Expr& e) { return e.isLit() || e.isLVar() || e.isPVar(); }

Expr simplifyOnce(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Lit:
        case Expr::Kind::PVar:
        case Expr::Kind::LVar: return e;
        case Expr::Kind::UnOp: {
            Expr a = simplifyOnce(e.arg());
            if (a.isLit()) {
                auto v = applyUnOp(e.unOp(), a.litVal());
                if (v) return Expr::lit(*v);
            }
            if (e.unOp() == UnOpKind::Not && a.isUnOp() && a.unOp() == UnOpKind::Not)
                return a.arg();
            if (e.unOp() == UnOpKind::Head || e.unOp() == UnOpKind::Tail ||
                e.unOp() == UnOpKind::Len) {
                auto sp = listSpine(a);
                if (sp) {
                    if (e.unOp() == UnOpKind::Head && !sp->elems.empty()) return sp->elems.front();
                    if (e.unOp() == UnOpKind::Tail && !sp->elems.empty()) {
                        std::vector<Expr> rest(sp->elems.begin() + 1, sp->elems.end());
                        return rebuildSpine(rest, sp->rest);
                    }
                    if (e.unOp() == UnOpKind::Len && !sp->rest)
                        return Expr::lit(GilValue::num(static_cast<long>(sp->elems.size())));
                    if (e.unOp() == UnOpKind::Len && !sp->elems.empty())
                        return Expr::binop(BinOpKind::Add,
                                           Expr::lit(GilValue::num(static_cast<long>(sp->elems.size()))),
                                           Expr::unop(UnOpKind::Len, *sp->rest));
                }
            }
            return a == e.arg() ? e : Expr::unop(e.unOp(), a);
        }
        case Expr::Kind::BinOp: {
            Expr l = simplifyOnce(e.lhs());
            Expr r = simplifyOnce(e.rhs());
            BinOpKind op = e.binOp();
            if (l.isLit() && r.isLit()) {
                auto v = applyBinOp(op, l.litVal(), r.litVal());
                if (v) return Expr::lit(*v);
            }
            if (op == BinOpKind::And) {
                if (l.isLitBool(false)) return Expr::lit(GilValue::boolean(false));
                if (l.isLitBool(true)) return r;
                if (r.isLitBool(true)) return l;
            }
            if (op == BinOpKind::Or) {
                if (l.isLitBool(true)) return Expr::lit(GilValue::boolean(true));
                if (l.isLitBool(false)) return r;
                if (r.isLitBool(false)) return l;
            }
            if (op == BinOpKind::Eq && isAtomLeaf(l) && l == r)
                return Expr::lit(GilValue::boolean(true));
            if (op == BinOpKind::Nth && r.isLit() && r.litVal().isNum()) {
                auto sp = listSpine(l);
                auto k = r.litVal().asNum().asInt();
                if (sp && k && *k >= 0 && static_cast<size_t>(*k) < sp->elems.size())
                    return sp->elems[static_cast<size_t>(*k)];
            }
            if (op == BinOpKind::Cons || op == BinOpKind::LCat) {
                Expr cur = Expr::binop(op, l, r);
                auto sp = listSpine(cur);
                if (sp) return rebuildSpine(sp->elems, sp->rest);
                return cur;
            }
            if (l == e.lhs() && r == e.rhs()) return e;
            return Expr::binop(op, l, r);
        }
    }
    return e;
}

}  // namespace

Expr simplify(const Expr& e) {
    Expr cur = e;
    for (int i = 0; i < 8; ++i) {
        Expr next = simplifyOnce(cur);
        if (next == cur) return cur;
        cur = next;
    }
    return cur;
}

SubstStoreResult substStore(const Expr& e, const std::map<std::string, Expr>& store) {
    SubstResult r = substPVars(e, store);
    if (!r.expr) return {std::nullopt, r.unbound};
    return {simplify(*r.expr), ""};
}

std::optional<GilValue> evalUnder(const Expr& e, const LogicalEnv& env) {
    return evalExpr(
        e, nullptr,
        [&env](const std::string& name) -> std::optional<GilValue> {
            auto it = env.find(name);
            if (it == env.end()) return std::nullopt;
            return it->second;
        });
}

std::optional<GilValue> evalClosed(const Expr& e) { return evalExpr(e, nullptr, nullptr); }

bool evalBoolUnder(const Expr& e, const LogicalEnv& env) {
    auto v = evalUnder(e, env);
    return v && v->isBool() && v->asBool();
}

bool pcHoldsUnder(const PathCondition& pc, const LogicalEnv& env) {
    for (const Expr& c : pc)
        if (!evalBoolUnder(c, env)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Satisfiability engine
// ---------------------------------------------------------------------------

namespace {

struct Linear {
    std::map<std::string, Rational> coef;
    Rational konst;
};

std::optional<Linear> asLinear(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Lit:
            if (!e.litVal().isNum() || !e.litVal().asNum().exact()) return std::nullopt;
            return Linear{{}, e.litVal().asNum().rat()};
        case Expr::Kind::LVar: {
            Linear l;
            l.coef[e.varName()] = 1;
            return l;
        }
        case Expr::Kind::UnOp: {
            if (e.unOp() != UnOpKind::Neg) return std::nullopt;
            auto a = asLinear(e.arg());
            if (!a) return std::nullopt;
            for (auto& [_, c] : a->coef) c = -c;
            a->konst = -a->konst;
            return a;
        }
        case Expr::Kind::BinOp: {
            if (e.binOp() == BinOpKind::Add || e.binOp() == BinOpKind::Sub) {
                auto l = asLinear(e.lhs()), r = asLinear(e.rhs());
                if (!l || !r) return std::nullopt;
                int sign = e.binOp() == BinOpKind::Add ? 1 : -1;
                for (auto& [x, c] : r->coef) l->coef[x] += sign * c;
                l->konst += sign * r->konst;
                for (auto it = l->coef.begin(); it != l->coef.end();)
                    it = it->second == 0 ? l->coef.erase(it) : std::next(it);
                return l;
            }
            if (e.binOp() == BinOpKind::Mul) {
                auto l = asLinear(e.lhs()), r = asLinear(e.rhs());
                if (!l || !r) return std::nullopt;
                if (!l->coef.empty() && !r->coef.empty()) return std::nullopt;
                if (l->coef.empty()) std::swap(l, r);
                Rational k = r->konst;
                for (auto& [_, c] : l->coef) c *= k;
                l->konst *= k;
                for (auto it = l->coef.begin(); it != l->coef.end();)
                    it = it->second == 0 ? l->coef.erase(it) : std::next(it);
                return l;
            }
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

enum class TypeGuess { None, Num, Bool, Str, List, Loc };

Rational ratFloor(const Rational& r) {
    boost::multiprecision::cpp_int n = boost::multiprecision::numerator(r);
    boost::multiprecision::cpp_int d = boost::multiprecision::denominator(r);
    boost::multiprecision::cpp_int q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return Rational(q);
}

/// Bounds on a single numeric variable, accumulated from univariate linear
/// inequalities.
struct Interval {
    std::optional<Rational> lo, hi;
    bool loStrict = false, hiStrict = false;

    void addLower(const Rational& b, bool strict) {
        if (!lo || b > *lo || (b == *lo && strict)) {
            lo = b;
            loStrict = strict;
        }
    }
    void addUpper(const Rational& b, bool strict) {
        if (!hi || b < *hi || (b == *hi && strict)) {
            hi = b;
            hiStrict = strict;
        }
    }
    bool empty() const {
        if (!lo || !hi) return false;
        if (*lo > *hi) return true;
        return *lo == *hi && (loStrict || hiStrict);
    }
    bool contains(const Rational& v) const {
        if (lo && (v < *lo || (v == *lo && loStrict))) return false;
        if (hi && (v > *hi || (v == *hi && hiStrict))) return false;
        return true;
    }
    /// An integer inside the interval, preferring low values offset by k;
    /// nullopt when no integer fits.
    std::optional<Rational> pickInteger(long k) const {
        Rational base;
        if (lo) {
            base = ratFloor(*lo);
            while (!contains(base)) base += 1;
        } else if (hi) {
            base = ratFloor(*hi);
            while (!contains(base)) base -= 1;
            base -= k;
            return contains(base) ? std::optional<Rational>(base) : std::nullopt;
        } else {
            return Rational(k);
        }
        Rational shifted = base + k;
        if (contains(shifted)) return shifted;
        return contains(base) ? std::optional<Rational>(base) : std::nullopt;
    }
};

struct Analysis {
    bool unsat = false;
    std::string unsatWhy;

    // union-find over atoms: logical variables and literal constants
    std::map<std::string, std::string> parent;  // key -> parent key
    std::map<std::string, GilValue> constOf;    // root key -> literal value
    std::map<std::string, Expr> defs;           // var -> defining compound term
    std::map<std::string, Interval> intervals;  // univariate inequality bounds
    std::vector<std::pair<Expr, Expr>> diseqs;  // required disequal (atom exprs)
    std::vector<Expr> residual;                 // undecided conjuncts
    std::map<std::string, TypeGuess> guess;

    static std::string keyOf(const Expr& atom) {
        if (atom.isLVar()) return "v:" + atom.varName();
        return "k:" + atom.litVal().show();
    }

    std::string find(std::string k) {
        auto it = parent.find(k);
        while (it != parent.end() && it->second != k) {
            k = it->second;
            it = parent.find(k);
        }
        return k;
    }

    void markUnsat(const std::string& why) {
        unsat = true;
        if (unsatWhy.empty()) unsatWhy = why;
    }

    void unite(const Expr& a, const Expr& b) {
        std::string ra = find(keyOf(a)), rb = find(keyOf(b));
        if (ra == rb) return;
        auto ca = constOf.find(ra), cb = constOf.find(rb);
        if (ca != constOf.end() && cb != constOf.end() && ca->second != cb->second) {
            markUnsat(ca->second.show() + " = " + cb->second.show());
            return;
        }
        // keep the constant on the surviving root
        if (ca != constOf.end()) std::swap(ra, rb);
        parent[ra] = rb;
        parent.try_emplace(rb, rb);
    }

    void noteAtom(const Expr& atom) {
        std::string k = keyOf(atom);
        parent.try_emplace(k, k);
        if (atom.isLit()) constOf.try_emplace(find(k), atom.litVal());
    }

    std::optional<GilValue> valueOfVar(const std::string& name) {
        auto it = constOf.find(find("v:" + name));
        if (it == constOf.end()) return std::nullopt;
        return it->second;
    }

    void guessType(const std::string& var, TypeGuess g) {
        auto& cur = guess[var];
        if (cur == TypeGuess::None) cur = g;
    }
};

bool isAtom(const Expr& e) { return e.isLVar() || e.isLit(); }

void collectTypeGuesses(const Expr& e, Analysis& an, TypeGuess ctx) {
    switch (e.kind()) {
        case Expr::Kind::LVar:
            if (ctx != TypeGuess::None) an.guessType(e.varName(), ctx);
            return;
        case Expr::Kind::Lit:
        case Expr::Kind::PVar: return;
        case Expr::Kind::UnOp:
            switch (e.unOp()) {
                case UnOpKind::Not: collectTypeGuesses(e.arg(), an, TypeGuess::Bool); return;
                case UnOpKind::Neg: collectTypeGuesses(e.arg(), an, TypeGuess::Num); return;
                default: collectTypeGuesses(e.arg(), an, TypeGuess::List); return;
            }
        case Expr::Kind::BinOp: {
            TypeGuess lg = TypeGuess::None, rg = TypeGuess::None;
            switch (e.binOp()) {
                case BinOpKind::Add:
                case BinOpKind::Sub:
                case BinOpKind::Mul:
                case BinOpKind::Div:
                case BinOpKind::Lt:
                case BinOpKind::Leq: lg = rg = TypeGuess::Num; break;
                case BinOpKind::And:
                case BinOpKind::Or: lg = rg = TypeGuess::Bool; break;
                case BinOpKind::SCat: lg = rg = TypeGuess::Str; break;
                case BinOpKind::LCat: lg = rg = TypeGuess::List; break;
                case BinOpKind::Cons: rg = TypeGuess::List; break;
                case BinOpKind::Nth: lg = TypeGuess::List, rg = TypeGuess::Num; break;
                case BinOpKind::Eq: {
                    // propagate the other side's evident type
                    auto evident = [](const Expr& x) -> TypeGuess {
                        if (!x.isLit()) return TypeGuess::None;
                        switch (x.litVal().kind()) {
                            case TypeTag::Num: return TypeGuess::Num;
                            case TypeTag::Bool: return TypeGuess::Bool;
                            case TypeTag::Str: return TypeGuess::Str;
                            case TypeTag::List: return TypeGuess::List;
                            case TypeTag::Symb: return TypeGuess::Loc;
                            default: return TypeGuess::None;
                        }
                    };
                    lg = evident(e.rhs());
                    rg = evident(e.lhs());
                    break;
                }
            }
            collectTypeGuesses(e.lhs(), an, lg);
            collectTypeGuesses(e.rhs(), an, rg);
            return;
        }
    }
}

void processConjunct(Analysis& an, const Expr& c, std::vector<Expr>& next);

/// Record a linear inequality's bound when it mentions exactly one variable.
/// Returns false when the inequality is not univariate-linear; the caller
/// keeps the conjunct residual in that case.
bool processIneq(Analysis& an, const Expr& l, const Expr& r, bool strict) {
    auto ll = asLinear(l), lr = asLinear(r);
    if (!ll || !lr) return false;
    for (auto& [x, c] : lr->coef) ll->coef[x] -= c;
    ll->konst -= lr->konst;
    for (auto it = ll->coef.begin(); it != ll->coef.end();)
        it = it->second == 0 ? ll->coef.erase(it) : std::next(it);
    if (ll->coef.empty()) {
        bool holds = strict ? (ll->konst < 0) : (ll->konst <= 0);
        if (!holds) an.markUnsat("contradictory arithmetic inequality");
        return true;
    }
    if (ll->coef.size() != 1) return false;
    const auto& [x, a] = *ll->coef.begin();
    Rational bound = -ll->konst / a;
    Interval& iv = an.intervals[x];
    if (a > 0)
        iv.addUpper(bound, strict);
    else
        iv.addLower(bound, strict);
    if (iv.empty()) an.markUnsat("contradictory bounds on " + x);
    an.guessType(x, TypeGuess::Num);
    return true;
}

void processEq(Analysis& an, const Expr& a, const Expr& b, std::vector<Expr>& next) {
    if (a == b) return;  // e = e holds for the well-defined terms stored in states
    if (isAtom(a) && isAtom(b)) {
        an.noteAtom(a);
        an.noteAtom(b);
        an.unite(a, b);
        return;
    }
    // list spine decomposition
    auto sa = listSpine(a), sb = listSpine(b);
    if (sa && sb) {
        size_t n = std::min(sa->elems.size(), sb->elems.size());
        for (size_t i = 0; i < n; ++i)
            next.push_back(Expr::binop(BinOpKind::Eq, sa->elems[i], sb->elems[i]));
        auto restA = std::vector<Expr>(sa->elems.begin() + n, sa->elems.end());
        auto restB = std::vector<Expr>(sb->elems.begin() + n, sb->elems.end());
        if (restA.empty() && restB.empty()) {
            if (sa->rest && sb->rest)
                next.push_back(Expr::binop(BinOpKind::Eq, *sa->rest, *sb->rest));
            else if (sa->rest)
                next.push_back(Expr::binop(BinOpKind::Eq, *sa->rest, Expr::lit(GilValue::list({}))));
            else if (sb->rest)
                next.push_back(Expr::binop(BinOpKind::Eq, *sb->rest, Expr::lit(GilValue::list({}))));
            return;
        }
        // one spine has leftover elements; the other must continue in its rest
        const auto& leftover = restA.empty() ? restB : restA;
        const auto& shortRest = restA.empty() ? sa->rest : sb->rest;
        const auto& longRest = restA.empty() ? sb->rest : sa->rest;
        if (!shortRest) {
            an.markUnsat("lists of provably different lengths equated");
            return;
        }
        next.push_back(Expr::binop(BinOpKind::Eq, *shortRest, rebuildSpine(leftover, longRest)));
        return;
    }
    // one side a decomposed list, the other a non-list literal
    if ((sa && b.isLit() && !b.litVal().isList()) || (sb && a.isLit() && !a.litVal().isList())) {
        an.markUnsat("list equated with non-list literal");
        return;
    }
    // univariate linear solving
    auto la = asLinear(a), lb = asLinear(b);
    if (la && lb) {
        for (auto& [x, c2] : lb->coef) la->coef[x] -= c2;
        la->konst -= lb->konst;
        for (auto it = la->coef.begin(); it != la->coef.end();)
            it = it->second == 0 ? la->coef.erase(it) : std::next(it);
        if (la->coef.empty()) {
            if (la->konst != 0) an.markUnsat("contradictory arithmetic equality");
            return;
        }
        if (la->coef.size() == 1) {
            const auto& [x, cx] = *la->coef.begin();
            Rational val = -la->konst / cx;
            Expr var = Expr::lvar(x);
            Expr lit = Expr::lit(GilValue::num(Number(val)));
            an.noteAtom(var);
            an.noteAtom(lit);
            an.unite(var, lit);
            return;
        }
    }
    // definitional equality: a variable equated to a compound term it does
    // not occur in rewrites that variable everywhere else
    auto tryDef = [&an](const Expr& var, const Expr& body) {
        if (!var.isLVar()) return false;
        std::set<std::string> fv = body.freeLVars();
        if (fv.count(var.varName())) return false;
        if (an.defs.count(var.varName())) return false;
        an.defs.emplace(var.varName(), body);
        return true;
    };
    if (tryDef(a, b) || tryDef(b, a)) return;
    an.residual.push_back(Expr::binop(BinOpKind::Eq, a, b));
}

void processConjunct(Analysis& an, const Expr& c, std::vector<Expr>& next) {
    if (an.unsat) return;
    if (c.isLitBool(true)) return;
    if (c.isLitBool(false)) {
        an.markUnsat("conjunct is false: " + c.show());
        return;
    }
    if (c.isLVar()) {
        Expr t = Expr::lit(GilValue::boolean(true));
        an.noteAtom(c);
        an.noteAtom(t);
        an.unite(c, t);
        return;
    }
    if (c.isUnOp() && c.unOp() == UnOpKind::Not) {
        Expr inner = c.arg();
        if (inner.isLVar()) {
            Expr f = Expr::lit(GilValue::boolean(false));
            an.noteAtom(inner);
            an.noteAtom(f);
            an.unite(inner, f);
            return;
        }
        if (inner.isBinOp() && inner.binOp() == BinOpKind::Or) {
            next.push_back(Expr::unop(UnOpKind::Not, inner.lhs()));
            next.push_back(Expr::unop(UnOpKind::Not, inner.rhs()));
            return;
        }
        if (inner.isBinOp() && inner.binOp() == BinOpKind::Lt) {
            if (processIneq(an, inner.rhs(), inner.lhs(), false)) return;  // r <= l
            an.residual.push_back(c);
            return;
        }
        if (inner.isBinOp() && inner.binOp() == BinOpKind::Leq) {
            if (processIneq(an, inner.rhs(), inner.lhs(), true)) return;  // r < l
            an.residual.push_back(c);
            return;
        }
        if (inner.isBinOp() && inner.binOp() == BinOpKind::Eq) {
            Expr a = inner.lhs(), b = inner.rhs();
            if (a == b) {
                an.markUnsat("disequality on identical terms: " + c.show());
                return;
            }
            auto sa = listSpine(a), sb = listSpine(b);
            if (sa && sb && !sa->rest && !sb->rest && sa->elems.size() != sb->elems.size())
                return;  // provably different lengths: disequality holds
            if (isAtom(a) && isAtom(b)) {
                an.noteAtom(a);
                an.noteAtom(b);
                an.diseqs.emplace_back(a, b);
                return;
            }
        }
        an.residual.push_back(c);
        return;
    }
    if (c.isBinOp() && c.binOp() == BinOpKind::And) {
        next.push_back(c.lhs());
        next.push_back(c.rhs());
        return;
    }
    if (c.isBinOp() && c.binOp() == BinOpKind::Eq) {
        processEq(an, c.lhs(), c.rhs(), next);
        return;
    }
    if (c.isBinOp() && (c.binOp() == BinOpKind::Lt || c.binOp() == BinOpKind::Leq)) {
        if (processIneq(an, c.lhs(), c.rhs(), c.binOp() == BinOpKind::Lt)) return;
    }
    an.residual.push_back(c);
}

// Reflexivity folding used only inside the solver: a comparison of two
// structurally identical terms is decided regardless of the terms. Sat
// answers remain witness-validated against the original pc.
Expr reflexFold(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::UnOp: {
            Expr a = reflexFold(e.arg());
            return a == e.arg() ? e : Expr::unop(e.unOp(), a);
        }
        case Expr::Kind::BinOp: {
            Expr l = reflexFold(e.lhs());
            Expr r = reflexFold(e.rhs());
            if (l == r) {
                if (e.binOp() == BinOpKind::Eq || e.binOp() == BinOpKind::Leq)
                    return Expr::lit(GilValue::boolean(true));
                if (e.binOp() == BinOpKind::Lt) return Expr::lit(GilValue::boolean(false));
            }
            if (l == e.lhs() && r == e.rhs()) return e;
            return Expr::binop(e.binOp(), l, r);
        }
        default: return e;
    }
}

Analysis analyze(const PathCondition& pc) {
    Analysis an;
    for (const Expr& c : pc) collectTypeGuesses(c, an, TypeGuess::Bool);

    std::vector<Expr> pending(pc.begin(), pc.end());
    std::map<std::string, Expr> prevSubst;

    for (int round = 0; round < 32 && !an.unsat; ++round) {
        // a defined variable that acquired a constant turns its definition
        // back into an ordinary equality
        for (auto it = an.defs.begin(); it != an.defs.end();) {
            auto cv = an.valueOfVar(it->first);
            if (cv) {
                pending.push_back(Expr::binop(BinOpKind::Eq, Expr::lit(*cv), it->second));
                it = an.defs.erase(it);
            } else {
                ++it;
            }
        }

        std::map<std::string, Expr> subst;
        std::set<std::string> vars;
        for (const Expr& c : pending) c.collectLVars(vars);
        for (const Expr& c : an.residual) c.collectLVars(vars);
        for (const auto& v : vars) {
            auto val = an.valueOfVar(v);
            if (val)
                subst.emplace(v, Expr::lit(*val));
            else if (auto dit = an.defs.find(v); dit != an.defs.end())
                subst.emplace(v, dit->second);
        }
        if (round > 0 && pending.empty() && subst == prevSubst) break;
        prevSubst = subst;

        std::vector<Expr> todo = std::move(pending);
        todo.insert(todo.end(), an.residual.begin(), an.residual.end());
        an.residual.clear();
        pending.clear();

        std::vector<Expr> next;
        for (const Expr& cRaw : todo) {
            processConjunct(an, simplify(reflexFold(simplify(substLVarsPartial(cRaw, subst)))),
                            next);
            if (an.unsat) break;
        }
        pending = std::move(next);
    }
    for (const Expr& c : pending)
        if (!an.unsat) an.residual.push_back(c);

    // a point interval pins its variable to a constant
    if (!an.unsat) {
        for (const auto& [x, iv] : an.intervals) {
            if (iv.lo && iv.hi && *iv.lo == *iv.hi && !iv.loStrict && !iv.hiStrict) {
                Expr var = Expr::lvar(x);
                Expr lit = Expr::lit(GilValue::num(Number(*iv.lo)));
                an.noteAtom(var);
                an.noteAtom(lit);
                an.unite(var, lit);
                if (an.unsat) break;
            }
        }
    }

    // forced constants must sit inside their variable's interval
    if (!an.unsat) {
        for (const auto& [x, iv] : an.intervals) {
            auto cv = an.valueOfVar(x);
            if (!cv) continue;
            if (!cv->isNum() || !cv->asNum().exact() || !iv.contains(cv->asNum().rat())) {
                an.markUnsat("constant for " + x + " violates its bounds");
                break;
            }
        }
    }

    // disequality contradiction check
    if (!an.unsat) {
        for (const auto& [a, b] : an.diseqs) {
            std::string ra = an.find(Analysis::keyOf(a)), rb = an.find(Analysis::keyOf(b));
            if (ra == rb) {
                an.markUnsat("disequality violated: " + a.show() + " != " + b.show());
                break;
            }
            auto ca = an.constOf.find(ra), cb = an.constOf.find(rb);
            if (ca != an.constOf.end() && cb != an.constOf.end() && ca->second == cb->second) {
                an.markUnsat("disequality violated on constants");
                break;
            }
        }
    }
    return an;
}

struct ClassInfo {
    std::vector<std::string> vars;
    std::optional<GilValue> constant;
    TypeGuess guess = TypeGuess::None;
    Interval bounds;  // intersection over the class members
};

GilValue defaultValue(TypeGuess g, long val, int pattern) {
    switch (g) {
        case TypeGuess::Bool: return GilValue::boolean((val + pattern) % 2 == 0);
        case TypeGuess::Str: return GilValue::str("s" + std::to_string(val));
        case TypeGuess::List:
            return val % 2 == 0 ? GilValue::list({})
                                : GilValue::list({GilValue::num(val)});
        case TypeGuess::Loc:
            return GilValue::symbol("$w_" + std::to_string(val));
        default: return GilValue::num(val);
    }
}

}  // namespace

std::vector<LogicalEnv> Solver::sampleModels(const PathCondition& pc,
                                             const std::set<std::string>& vars, size_t n,
                                             const SampleHints& hints) const {
    Analysis an = analyze(pc);
    if (an.unsat) return {};

    std::set<std::string> allVars = pcFreeLVars(pc);
    allVars.insert(vars.begin(), vars.end());

    // group variables into union-find classes
    std::map<std::string, ClassInfo> classes;
    std::vector<std::string> order;
    for (const auto& v : allVars) {
        std::string root = an.find("v:" + v);
        auto [it, fresh] = classes.try_emplace(root);
        if (fresh) order.push_back(root);
        it->second.vars.push_back(v);
        auto cit = an.constOf.find(root);
        if (cit != an.constOf.end()) it->second.constant = cit->second;
        auto g = an.guess.find(v);
        if (g != an.guess.end() && it->second.guess == TypeGuess::None) it->second.guess = g->second;
        if (hints.locationVars.count(v)) it->second.guess = TypeGuess::Loc;
        auto iv = an.intervals.find(v);
        if (iv != an.intervals.end()) {
            if (iv->second.lo) it->second.bounds.addLower(*iv->second.lo, iv->second.loStrict);
            if (iv->second.hi) it->second.bounds.addUpper(*iv->second.hi, iv->second.hiStrict);
        }
    }

    std::vector<LogicalEnv> out;
    std::set<std::string> seen;
    for (int pattern = 0; pattern < 10 && out.size() < n; ++pattern) {
        LogicalEnv env;
        long idx = 0;
        long nClasses = static_cast<long>(order.size());
        std::vector<std::pair<std::string, Expr>> deferred;  // class var with definition
        for (const auto& root : order) {
            const ClassInfo& ci = classes[root];
            GilValue v;
            if (ci.constant) {
                v = *ci.constant;
            } else {
                // classes holding a defined variable take the definition's
                // value once its free variables are assigned
                const Expr* def = nullptr;
                std::string defVar;
                for (const auto& var : ci.vars) {
                    auto dit = an.defs.find(var);
                    if (dit != an.defs.end()) {
                        def = &dit->second;
                        defVar = var;
                        break;
                    }
                }
                if (def) {
                    for (const auto& var : ci.vars) deferred.emplace_back(var, *def);
                    ++idx;
                    continue;
                }
                long rank = (pattern % 2 == 0) ? idx : (nClasses - 1 - idx);
                long spread = pattern < 4 ? 1 : 7;
                long val = pattern + spread * rank;
                if ((ci.guess == TypeGuess::Num || ci.guess == TypeGuess::None) &&
                    (ci.bounds.lo || ci.bounds.hi)) {
                    auto inside = ci.bounds.pickInteger(val % 3);
                    if (!inside) inside = ci.bounds.pickInteger(0);
                    if (!inside && ci.bounds.lo && ci.bounds.hi)
                        inside = (*ci.bounds.lo + *ci.bounds.hi) / 2;  // no integer fits
                    if (!inside) inside = Rational(0);
                    v = GilValue::num(Number(*inside));
                } else {
                    v = defaultValue(ci.guess, val, pattern);
                }
            }
            for (const auto& var : ci.vars) env[var] = v;
            ++idx;
        }
        // resolve definition chains
        for (size_t pass = 0; pass <= deferred.size() && !deferred.empty(); ++pass) {
            std::vector<std::pair<std::string, Expr>> still;
            for (const auto& [var, def] : deferred) {
                auto v = evalUnder(def, env);
                if (v)
                    env[var] = *v;
                else
                    still.emplace_back(var, def);
            }
            if (still.size() == deferred.size()) break;
            deferred = std::move(still);
        }
        if (!deferred.empty()) continue;
        if (!pcHoldsUnder(pc, env)) continue;
        bool total = true;
        for (const auto& v : allVars)
            if (!env.count(v)) total = false;
        if (!total) continue;
        std::ostringstream key;
        for (const auto& [k, v] : env) key << k << "=" << v.show() << ";";
        if (seen.insert(key.str()).second) out.push_back(std::move(env));
    }
    return out;
}

SatResult Solver::isSat(const PathCondition& pc) const {
    Analysis an = analyze(pc);
    if (an.unsat) return SatResult::Unsat;
    auto models = sampleModels(pc, {}, 1);
    if (!models.empty()) return SatResult::Sat;
    if (!smtCommand_.empty()) {
        SatResult ext = smtCheckSat(smtCommand_, pc);
        if (ext != SatResult::Unknown) return ext;
    }
    return SatResult::Unknown;
}

bool Solver::entails(const PathCondition& pc, const Expr& phi) const {
    if (simplify(phi).isLitBool(true)) return true;
    PathCondition q = pc;
    q.push_back(Expr::unop(UnOpKind::Not, phi));
    return isSat(q) == SatResult::Unsat;
}

}  // namespace gilliant
