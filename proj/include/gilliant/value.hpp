#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gilliant {

using Rational = boost::multiprecision::cpp_rational;

/// Numeric values. Exact rationals by default; a double-backed float mode
/// exists for callers that opt into it. Mixing an exact and a float operand
/// yields a float.
class Number {
public:
    Number() : exact_(true), rat_(0), flt_(0) {}
    explicit Number(Rational r) : exact_(true), rat_(std::move(r)), flt_(0) {}
    explicit Number(long n) : exact_(true), rat_(n), flt_(0) {}

    static Number fromDouble(double d) {
        Number n;
        n.exact_ = false;
        n.flt_ = d;
        return n;
    }

    bool exact() const { return exact_; }
    const Rational& rat() const { return rat_; }
    double flt() const { return flt_; }

    double asDouble() const { return exact_ ? rat_.convert_to<double>() : flt_; }

    bool isInteger() const {
        return exact_ ? boost::multiprecision::denominator(rat_) == 1
                      : flt_ == static_cast<double>(static_cast<std::int64_t>(flt_));
    }
    std::optional<std::int64_t> asInt() const;

    Number add(const Number& o) const { return arith(o, '+'); }
    Number sub(const Number& o) const { return arith(o, '-'); }
    Number mul(const Number& o) const { return arith(o, '*'); }
    std::optional<Number> div(const Number& o) const;
    Number neg() const;

    bool isZero() const { return exact_ ? rat_.is_zero() : flt_ == 0.0; }

    bool operator==(const Number& o) const { return cmp(o) == 0; }
    bool operator<(const Number& o) const { return cmp(o) < 0; }
    bool operator<=(const Number& o) const { return cmp(o) <= 0; }

    std::string show() const;

private:
    Number arith(const Number& o, char op) const;
    int cmp(const Number& o) const;

    bool exact_;
    Rational rat_;
    double flt_;
};

enum class TypeTag { Num, Str, Bool, Symb, Type, Proc, List };

const char* typeTagName(TypeTag t);
std::optional<TypeTag> typeTagFromName(const std::string& name);

/// GIL values: numbers, strings, booleans, uninterpreted symbols, type tags,
/// procedure identifiers, and (arbitrarily nested) lists of values.
class GilValue {
public:
    struct Symbol {
        std::string id;
        bool operator==(const Symbol& o) const { return id == o.id; }
        bool operator<(const Symbol& o) const { return id < o.id; }
    };
    struct ProcName {
        std::string name;
        bool operator==(const ProcName& o) const { return name == o.name; }
        bool operator<(const ProcName& o) const { return name < o.name; }
    };
    using List = std::vector<GilValue>;

    GilValue() : v_(false) {}

    static GilValue num(Number n) { return GilValue(Repr(std::move(n))); }
    static GilValue num(long n) { return num(Number(n)); }
    static GilValue str(std::string s) { return GilValue(Repr(Str{std::move(s)})); }
    static GilValue boolean(bool b) { return GilValue(Repr(b)); }
    static GilValue symbol(std::string id) { return GilValue(Repr(Symbol{std::move(id)})); }
    static GilValue typeTag(TypeTag t) { return GilValue(Repr(t)); }
    static GilValue proc(std::string name) { return GilValue(Repr(ProcName{std::move(name)})); }
    static GilValue list(List items) { return GilValue(Repr(std::move(items))); }

    TypeTag kind() const;

    bool isNum() const { return std::holds_alternative<Number>(v_); }
    bool isStr() const { return std::holds_alternative<Str>(v_); }
    bool isBool() const { return std::holds_alternative<bool>(v_); }
    bool isSymb() const { return std::holds_alternative<Symbol>(v_); }
    bool isType() const { return std::holds_alternative<TypeTag>(v_); }
    bool isProc() const { return std::holds_alternative<ProcName>(v_); }
    bool isList() const { return std::holds_alternative<List>(v_); }

    const Number& asNum() const { return std::get<Number>(v_); }
    const std::string& asStr() const { return std::get<Str>(v_).s; }
    bool asBool() const { return std::get<bool>(v_); }
    const std::string& symbolId() const { return std::get<Symbol>(v_).id; }
    TypeTag asType() const { return std::get<TypeTag>(v_); }
    const std::string& procName() const { return std::get<ProcName>(v_).name; }
    const List& asList() const { return std::get<List>(v_); }

    bool operator==(const GilValue& o) const { return compare(o) == 0; }
    bool operator!=(const GilValue& o) const { return compare(o) != 0; }
    bool operator<(const GilValue& o) const { return compare(o) < 0; }

    /// Total order across all value kinds (kind tag first, then content).
    int compare(const GilValue& o) const;

    std::string show() const;

private:
    struct Str {
        std::string s;
        bool operator==(const Str& o) const { return s == o.s; }
        bool operator<(const Str& o) const { return s < o.s; }
    };
    using Repr = std::variant<Number, Str, bool, Symbol, TypeTag, ProcName, List>;

    explicit GilValue(Repr r) : v_(std::move(r)) {}

    Repr v_;
};

enum class UnOpKind { Not, Neg, Head, Tail, Len };
enum class BinOpKind { Add, Sub, Mul, Div, Eq, Lt, Leq, And, Or, Cons, LCat, SCat, Nth };

const char* unOpName(UnOpKind op);
const char* binOpName(BinOpKind op);
std::optional<UnOpKind> unOpFromName(const std::string& s);
std::optional<BinOpKind> binOpFromName(const std::string& s);

/// Value-level operator application. Returns nullopt on ill-typed operands
/// (head of a non-list, arithmetic on strings, division by zero, ...).
/// And/Or are left-biased: a false/true left operand decides the result
/// regardless of the right operand's type.
std::optional<GilValue> applyUnOp(UnOpKind op, const GilValue& v);
std::optional<GilValue> applyBinOp(BinOpKind op, const GilValue& l, const GilValue& r);

}  // namespace gilliant
