#include "gilliant/while_ast.hpp"

#include <sstream>

namespace gilliant::wl {

namespace {
StmtPtr make(WhileStmt s) { return std::make_shared<const WhileStmt>(std::move(s)); }
}  // namespace

StmtPtr WhileStmt::assign(std::string x, Expr e) {
    WhileStmt s;
    s.kind = Kind::Assign;
    s.x = std::move(x);
    s.e = std::move(e);
    return make(std::move(s));
}

StmtPtr WhileStmt::skip() {
    WhileStmt s;
    s.kind = Kind::Skip;
    return make(std::move(s));
}

StmtPtr WhileStmt::seq(StmtPtr a, StmtPtr b) {
    WhileStmt s;
    s.kind = Kind::Seq;
    s.s1 = std::move(a);
    s.s2 = std::move(b);
    return make(std::move(s));
}

StmtPtr WhileStmt::ifElse(Expr cond, StmtPtr thenS, StmtPtr elseS) {
    WhileStmt s;
    s.kind = Kind::If;
    s.e = std::move(cond);
    s.s1 = std::move(thenS);
    s.s2 = std::move(elseS);
    return make(std::move(s));
}

StmtPtr WhileStmt::whileLoop(Expr cond, StmtPtr body) {
    WhileStmt s;
    s.kind = Kind::While;
    s.e = std::move(cond);
    s.s1 = std::move(body);
    return make(std::move(s));
}

StmtPtr WhileStmt::call(std::string x, std::string f, Expr arg) {
    WhileStmt s;
    s.kind = Kind::Call;
    s.x = std::move(x);
    s.fname = std::move(f);
    s.e = std::move(arg);
    return make(std::move(s));
}

StmtPtr WhileStmt::ret(Expr e) {
    WhileStmt s;
    s.kind = Kind::Return;
    s.e = std::move(e);
    return make(std::move(s));
}

StmtPtr WhileStmt::assume(Expr e) {
    WhileStmt s;
    s.kind = Kind::Assume;
    s.e = std::move(e);
    return make(std::move(s));
}

StmtPtr WhileStmt::assertStmt(Expr e) {
    WhileStmt s;
    s.kind = Kind::Assert;
    s.e = std::move(e);
    return make(std::move(s));
}

StmtPtr WhileStmt::newObj(std::string x, std::vector<std::pair<std::string, Expr>> fields) {
    WhileStmt s;
    s.kind = Kind::New;
    s.x = std::move(x);
    s.fields = std::move(fields);
    return make(std::move(s));
}

StmtPtr WhileStmt::lookup(std::string x, Expr obj, std::string prop) {
    WhileStmt s;
    s.kind = Kind::Lookup;
    s.x = std::move(x);
    s.e = std::move(obj);
    s.prop = std::move(prop);
    return make(std::move(s));
}

StmtPtr WhileStmt::mutate(Expr obj, std::string prop, Expr val) {
    WhileStmt s;
    s.kind = Kind::Mutate;
    s.e = std::move(obj);
    s.prop = std::move(prop);
    s.e2 = std::move(val);
    return make(std::move(s));
}

StmtPtr WhileStmt::dispose(Expr obj) {
    WhileStmt s;
    s.kind = Kind::Dispose;
    s.e = std::move(obj);
    return make(std::move(s));
}

StmtPtr WhileStmt::fold(std::string pred, Expr arg, int defIndex,
                        std::vector<std::pair<std::string, Expr>> bindings) {
    WhileStmt s;
    s.kind = Kind::Fold;
    s.fname = std::move(pred);
    s.e = std::move(arg);
    s.index = defIndex;
    s.bindings = std::move(bindings);
    return make(std::move(s));
}

StmtPtr WhileStmt::unfold(std::string pred, Expr arg) {
    WhileStmt s;
    s.kind = Kind::Unfold;
    s.fname = std::move(pred);
    s.e = std::move(arg);
    return make(std::move(s));
}

StmtPtr WhileStmt::specCall(std::string x, std::string f, Expr arg, int specIndex,
                            std::vector<std::pair<std::string, Expr>> bindings) {
    WhileStmt s;
    s.kind = Kind::SpecCall;
    s.x = std::move(x);
    s.fname = std::move(f);
    s.e = std::move(arg);
    s.index = specIndex;
    s.bindings = std::move(bindings);
    return make(std::move(s));
}

std::string WhileStmt::show(int indent) const {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    std::ostringstream os;
    switch (kind) {
        case Kind::Assign: os << pad << x << " := " << e.show() << ";"; break;
        case Kind::Skip: os << pad << "skip;"; break;
        case Kind::Seq: os << s1->show(indent) << "\n" << s2->show(indent); break;
        case Kind::If:
            os << pad << "if (" << e.show() << ") {\n"
               << s1->show(indent + 1) << "\n"
               << pad << "} else {\n"
               << s2->show(indent + 1) << "\n"
               << pad << "}";
            break;
        case Kind::While:
            os << pad << "while (" << e.show() << ") {\n"
               << s1->show(indent + 1) << "\n"
               << pad << "}";
            break;
        case Kind::Call: os << pad << x << " := " << fname << "(" << e.show() << ");"; break;
        case Kind::Return: os << pad << "return " << e.show() << ";"; break;
        case Kind::Assume: os << pad << "assume (" << e.show() << ");"; break;
        case Kind::Assert: os << pad << "assert (" << e.show() << ");"; break;
        case Kind::New: {
            os << pad << x << " := new {";
            for (size_t i = 0; i < fields.size(); ++i) {
                if (i) os << ", ";
                os << fields[i].first << ": " << fields[i].second.show();
            }
            os << "};";
            break;
        }
        case Kind::Lookup: os << pad << x << " := " << e.show() << "." << prop << ";"; break;
        case Kind::Mutate: os << pad << e.show() << "." << prop << " := " << e2.show() << ";"; break;
        case Kind::Dispose: os << pad << "dispose(" << e.show() << ");"; break;
        case Kind::Fold: {
            os << pad << "fold " << fname << "(" << e.show() << ") def " << index;
            if (!bindings.empty()) {
                os << " with ";
                for (size_t i = 0; i < bindings.size(); ++i) {
                    if (i) os << ", ";
                    os << bindings[i].first << ": " << bindings[i].second.show();
                }
            }
            os << ";";
            break;
        }
        case Kind::Unfold: os << pad << "unfold " << fname << "(" << e.show() << ");"; break;
        case Kind::SpecCall: {
            os << pad << x << " := speccall " << fname << "(" << e.show() << ") spec " << index;
            if (!bindings.empty()) {
                os << " with ";
                for (size_t i = 0; i < bindings.size(); ++i) {
                    if (i) os << ", ";
                    os << bindings[i].first << ": " << bindings[i].second.show();
                }
            }
            os << ";";
            break;
        }
    }
    return os.str();
}

std::string WhileProgram::show() const {
    std::ostringstream os;
    for (const auto& p : procs)
        os << "proc " << p.name << "(" << p.param << ") {\n" << p.body->show(1) << "\n}\n";
    return os.str();
}

}  // namespace gilliant::wl
