#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gilliant/logic.hpp"

namespace gilliant {

namespace {

enum class Sort { Real, Bool };

// Sort inference over the numeric/boolean fragment. Returns false when the
// expression leaves the fragment.
bool inferSorts(const Expr& e, Sort want, std::map<std::string, Sort>& sorts) {
    switch (e.kind()) {
        case Expr::Kind::Lit: {
            const GilValue& v = e.litVal();
            if (v.isNum()) return want == Sort::Real;
            if (v.isBool()) return want == Sort::Bool;
            return false;
        }
        case Expr::Kind::LVar: {
            auto [it, fresh] = sorts.try_emplace(e.varName(), want);
            return fresh || it->second == want;
        }
        case Expr::Kind::PVar: return false;
        case Expr::Kind::UnOp:
            if (e.unOp() == UnOpKind::Not)
                return want == Sort::Bool && inferSorts(e.arg(), Sort::Bool, sorts);
            if (e.unOp() == UnOpKind::Neg)
                return want == Sort::Real && inferSorts(e.arg(), Sort::Real, sorts);
            return false;
        case Expr::Kind::BinOp:
            switch (e.binOp()) {
                case BinOpKind::Add:
                case BinOpKind::Sub:
                case BinOpKind::Mul:
                case BinOpKind::Div:
                    return want == Sort::Real && inferSorts(e.lhs(), Sort::Real, sorts) &&
                           inferSorts(e.rhs(), Sort::Real, sorts);
                case BinOpKind::Lt:
                case BinOpKind::Leq:
                    return want == Sort::Bool && inferSorts(e.lhs(), Sort::Real, sorts) &&
                           inferSorts(e.rhs(), Sort::Real, sorts);
                case BinOpKind::And:
                case BinOpKind::Or:
                    return want == Sort::Bool && inferSorts(e.lhs(), Sort::Bool, sorts) &&
                           inferSorts(e.rhs(), Sort::Bool, sorts);
                case BinOpKind::Eq: {
                    if (want != Sort::Bool) return false;
                    std::map<std::string, Sort> attempt = sorts;
                    if (inferSorts(e.lhs(), Sort::Real, attempt) &&
                        inferSorts(e.rhs(), Sort::Real, attempt)) {
                        sorts = attempt;
                        return true;
                    }
                    attempt = sorts;
                    if (inferSorts(e.lhs(), Sort::Bool, attempt) &&
                        inferSorts(e.rhs(), Sort::Bool, attempt)) {
                        sorts = attempt;
                        return true;
                    }
                    return false;
                }
                default: return false;
            }
    }
    return false;
}

std::string smtName(const std::string& lvar) {
    std::string out = "v";
    for (char c : lvar) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

std::string encodeRational(const Rational& r) {
    std::ostringstream num, den;
    num << boost::multiprecision::numerator(r);
    den << boost::multiprecision::denominator(r);
    std::string n = num.str();
    bool negative = !n.empty() && n[0] == '-';
    if (negative) n = n.substr(1);
    std::string core = den.str() == "1" ? (n + ".0") : ("(/ " + n + ".0 " + den.str() + ".0)");
    return negative ? "(- " + core + ")" : core;
}

bool encode(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Lit:
            if (e.litVal().isNum()) {
                if (!e.litVal().asNum().exact()) return false;
                out += encodeRational(e.litVal().asNum().rat());
                return true;
            }
            if (e.litVal().isBool()) {
                out += e.litVal().asBool() ? "true" : "false";
                return true;
            }
            return false;
        case Expr::Kind::LVar: out += smtName(e.varName()); return true;
        case Expr::Kind::PVar: return false;
        case Expr::Kind::UnOp: {
            out += e.unOp() == UnOpKind::Not ? "(not " : "(- ";
            if (!encode(e.arg(), out)) return false;
            out += ")";
            return true;
        }
        case Expr::Kind::BinOp: {
            const char* op = nullptr;
            switch (e.binOp()) {
                case BinOpKind::Add: op = "+"; break;
                case BinOpKind::Sub: op = "-"; break;
                case BinOpKind::Mul: op = "*"; break;
                case BinOpKind::Div: op = "/"; break;
                case BinOpKind::Eq: op = "="; break;
                case BinOpKind::Lt: op = "<"; break;
                case BinOpKind::Leq: op = "<="; break;
                case BinOpKind::And: op = "and"; break;
                case BinOpKind::Or: op = "or"; break;
                default: return false;
            }
            out += "(";
            out += op;
            out += " ";
            if (!encode(e.lhs(), out)) return false;
            out += " ";
            if (!encode(e.rhs(), out)) return false;
            out += ")";
            return true;
        }
    }
    return false;
}

}  // namespace

SatResult smtCheckSat(const std::string& command, const PathCondition& pc) {
    std::map<std::string, Sort> sorts;
    std::vector<std::string> asserts;
    for (const Expr& c : pc) {
        Expr s = simplify(c);
        std::map<std::string, Sort> attempt = sorts;
        if (!inferSorts(s, Sort::Bool, attempt)) return SatResult::Unknown;
        sorts = attempt;
        std::string enc;
        if (!encode(s, enc)) return SatResult::Unknown;
        asserts.push_back(std::move(enc));
    }

    std::ostringstream script;
    for (const auto& [var, sort] : sorts)
        script << "(declare-const " << smtName(var) << (sort == Sort::Real ? " Real" : " Bool")
               << ")\n";
    for (const auto& a : asserts) script << "(assert " << a << ")\n";
    script << "(check-sat)\n";

    char path[] = "/tmp/gilliant_smt_XXXXXX";
    int fd = mkstemp(path);
    if (fd < 0) return SatResult::Unknown;
    {
        std::string text = script.str();
        FILE* f = fdopen(fd, "w");
        if (!f) return SatResult::Unknown;
        fwrite(text.data(), 1, text.size(), f);
        fclose(f);
    }

    std::string cmd = command + " " + path + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    SatResult result = SatResult::Unknown;
    if (pipe) {
        char buf[256];
        std::string output;
        while (fgets(buf, sizeof buf, pipe)) output += buf;
        pclose(pipe);
        std::istringstream is(output);
        std::string tok;
        while (is >> tok) {
            if (tok == "sat") {
                result = SatResult::Sat;
                break;
            }
            if (tok == "unsat") {
                result = SatResult::Unsat;
                break;
            }
            if (tok == "unknown") break;
        }
    }
    std::remove(path);
    return result;
}

}  // namespace gilliant
