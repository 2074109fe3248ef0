#include "gilliant/value.hpp"

#include <sstream>

namespace gilliant {

std::optional<std::int64_t> Number::asInt() const {
    if (!isInteger()) return std::nullopt;
    if (exact_) {
        auto n = boost::multiprecision::numerator(rat_);
        if (n < std::numeric_limits<std::int64_t>::min() || n > std::numeric_limits<std::int64_t>::max())
            return std::nullopt;
        return n.convert_to<std::int64_t>();
    }
    return static_cast<std::int64_t>(flt_);
}

Number Number::arith(const Number& o, char op) const {
    if (exact_ && o.exact_) {
        Rational r;
        switch (op) {
            case '+': r = rat_ + o.rat_; break;
            case '-': r = rat_ - o.rat_; break;
            default: r = rat_ * o.rat_; break;
        }
        return Number(std::move(r));
    }
    double a = asDouble(), b = o.asDouble();
    switch (op) {
        case '+': return fromDouble(a + b);
        case '-': return fromDouble(a - b);
        default: return fromDouble(a * b);
    }
}

std::optional<Number> Number::div(const Number& o) const {
    if (o.isZero()) return std::nullopt;
    if (exact_ && o.exact_) return Number(rat_ / o.rat_);
    return fromDouble(asDouble() / o.asDouble());
}

Number Number::neg() const {
    if (exact_) return Number(-rat_);
    return fromDouble(-flt_);
}

int Number::cmp(const Number& o) const {
    if (exact_ && o.exact_) return rat_ == o.rat_ ? 0 : (rat_ < o.rat_ ? -1 : 1);
    double a = asDouble(), b = o.asDouble();
    return a == b ? 0 : (a < b ? -1 : 1);
}

std::string Number::show() const {
    if (exact_) {
        std::ostringstream os;
        os << rat_;
        return os.str();
    }
    std::ostringstream os;
    os << flt_;
    return os.str();
}

const char* typeTagName(TypeTag t) {
    switch (t) {
        case TypeTag::Num: return "num";
        case TypeTag::Str: return "str";
        case TypeTag::Bool: return "bool";
        case TypeTag::Symb: return "symb";
        case TypeTag::Type: return "type";
        case TypeTag::Proc: return "proc";
        case TypeTag::List: return "list";
    }
    return "?";
}

std::optional<TypeTag> typeTagFromName(const std::string& name) {
    for (TypeTag t : {TypeTag::Num, TypeTag::Str, TypeTag::Bool, TypeTag::Symb, TypeTag::Type,
                      TypeTag::Proc, TypeTag::List})
        if (name == typeTagName(t)) return t;
    return std::nullopt;
}

TypeTag GilValue::kind() const {
    if (isNum()) return TypeTag::Num;
    if (isStr()) return TypeTag::Str;
    if (isBool()) return TypeTag::Bool;
    if (isSymb()) return TypeTag::Symb;
    if (isType()) return TypeTag::Type;
    if (isProc()) return TypeTag::Proc;
    return TypeTag::List;
}

int GilValue::compare(const GilValue& o) const {
    if (v_.index() != o.v_.index())
        return v_.index() < o.v_.index() ? -1 : 1;
    if (isNum()) {
        const Number &a = asNum(), &b = o.asNum();
        return a == b ? 0 : (a < b ? -1 : 1);
    }
    if (isStr()) return asStr().compare(o.asStr());
    if (isBool()) return asBool() == o.asBool() ? 0 : (asBool() < o.asBool() ? -1 : 1);
    if (isSymb()) return symbolId().compare(o.symbolId());
    if (isType()) {
        int a = static_cast<int>(asType()), b = static_cast<int>(o.asType());
        return a == b ? 0 : (a < b ? -1 : 1);
    }
    if (isProc()) return procName().compare(o.procName());
    const List &a = asList(), &b = o.asList();
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c;
    }
    return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

std::string GilValue::show() const {
    if (isNum()) return asNum().show();
    if (isStr()) {
        std::string out = "\"";
        for (char c : asStr()) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    }
    if (isBool()) return asBool() ? "true" : "false";
    if (isSymb()) return symbolId();
    if (isType()) return std::string("type:") + typeTagName(asType());
    if (isProc()) return "@" + procName();
    std::string out = "[";
    const List& xs = asList();
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += xs[i].show();
    }
    return out + "]";
}

const char* unOpName(UnOpKind op) {
    switch (op) {
        case UnOpKind::Not: return "not";
        case UnOpKind::Neg: return "-";
        case UnOpKind::Head: return "hd";
        case UnOpKind::Tail: return "tl";
        case UnOpKind::Len: return "len";
    }
    return "?";
}

const char* binOpName(BinOpKind op) {
    switch (op) {
        case BinOpKind::Add: return "+";
        case BinOpKind::Sub: return "-";
        case BinOpKind::Mul: return "*";
        case BinOpKind::Div: return "/";
        case BinOpKind::Eq: return "=";
        case BinOpKind::Lt: return "<";
        case BinOpKind::Leq: return "<=";
        case BinOpKind::And: return "and";
        case BinOpKind::Or: return "or";
        case BinOpKind::Cons: return "::";
        case BinOpKind::LCat: return "@";
        case BinOpKind::SCat: return "++";
        case BinOpKind::Nth: return "nth";
    }
    return "?";
}

std::optional<UnOpKind> unOpFromName(const std::string& s) {
    for (UnOpKind op : {UnOpKind::Not, UnOpKind::Neg, UnOpKind::Head, UnOpKind::Tail, UnOpKind::Len})
        if (s == unOpName(op)) return op;
    return std::nullopt;
}

std::optional<BinOpKind> binOpFromName(const std::string& s) {
    for (BinOpKind op :
         {BinOpKind::Add, BinOpKind::Sub, BinOpKind::Mul, BinOpKind::Div, BinOpKind::Eq, BinOpKind::Lt,
          BinOpKind::Leq, BinOpKind::And, BinOpKind::Or, BinOpKind::Cons, BinOpKind::LCat,
          BinOpKind::SCat, BinOpKind::Nth})
        if (s == binOpName(op)) return op;
    return std::nullopt;
}

std::optional<GilValue> applyUnOp(UnOpKind op, const GilValue& v) {
    switch (op) {
        case UnOpKind::Not:
            if (!v.isBool()) return std::nullopt;
            return GilValue::boolean(!v.asBool());
        case UnOpKind::Neg:
            if (!v.isNum()) return std::nullopt;
            return GilValue::num(v.asNum().neg());
        case UnOpKind::Head:
            if (!v.isList() || v.asList().empty()) return std::nullopt;
            return v.asList().front();
        case UnOpKind::Tail: {
            if (!v.isList() || v.asList().empty()) return std::nullopt;
            GilValue::List rest(v.asList().begin() + 1, v.asList().end());
            return GilValue::list(std::move(rest));
        }
        case UnOpKind::Len:
            if (!v.isList()) return std::nullopt;
            return GilValue::num(static_cast<long>(v.asList().size()));
    }
    return std::nullopt;
}

std::optional<GilValue> applyBinOp(BinOpKind op, const GilValue& l, const GilValue& r) {
    switch (op) {
        case BinOpKind::Add:
        case BinOpKind::Sub:
        case BinOpKind::Mul:
            if (!l.isNum() || !r.isNum()) return std::nullopt;
            switch (op) {
                case BinOpKind::Add: return GilValue::num(l.asNum().add(r.asNum()));
                case BinOpKind::Sub: return GilValue::num(l.asNum().sub(r.asNum()));
                default: return GilValue::num(l.asNum().mul(r.asNum()));
            }
        case BinOpKind::Div: {
            if (!l.isNum() || !r.isNum()) return std::nullopt;
            auto q = l.asNum().div(r.asNum());
            if (!q) return std::nullopt;
            return GilValue::num(*q);
        }
        case BinOpKind::Eq:
            return GilValue::boolean(l == r);
        case BinOpKind::Lt:
            if (!l.isNum() || !r.isNum()) return std::nullopt;
            return GilValue::boolean(l.asNum() < r.asNum());
        case BinOpKind::Leq:
            if (!l.isNum() || !r.isNum()) return std::nullopt;
            return GilValue::boolean(l.asNum() <= r.asNum());
        case BinOpKind::And:
            if (!l.isBool()) return std::nullopt;
            if (!l.asBool()) return GilValue::boolean(false);
            if (!r.isBool()) return std::nullopt;
            return r;
        case BinOpKind::Or:
            if (!l.isBool()) return std::nullopt;
            if (l.asBool()) return GilValue::boolean(true);
            if (!r.isBool()) return std::nullopt;
            return r;
        case BinOpKind::Cons: {
            if (!r.isList()) return std::nullopt;
            GilValue::List xs;
            xs.reserve(r.asList().size() + 1);
            xs.push_back(l);
            xs.insert(xs.end(), r.asList().begin(), r.asList().end());
            return GilValue::list(std::move(xs));
        }
        case BinOpKind::LCat: {
            if (!l.isList() || !r.isList()) return std::nullopt;
            GilValue::List xs = l.asList();
            xs.insert(xs.end(), r.asList().begin(), r.asList().end());
            return GilValue::list(std::move(xs));
        }
        case BinOpKind::SCat:
            if (!l.isStr() || !r.isStr()) return std::nullopt;
            return GilValue::str(l.asStr() + r.asStr());
        case BinOpKind::Nth: {
            if (!l.isList() || !r.isNum()) return std::nullopt;
            auto k = r.asNum().asInt();
            if (!k || *k < 0 || static_cast<size_t>(*k) >= l.asList().size()) return std::nullopt;
            return l.asList()[static_cast<size_t>(*k)];
        }
    }
    return std::nullopt;
}

}  // namespace gilliant
