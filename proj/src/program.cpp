#include "gilliant/program.hpp"

#include <set>
#include <sstream>

namespace gilliant {

GilCommand GilCommand::assign(std::string x, Expr e) {
    GilCommand c;
    c.kind = Kind::Assign;
    c.x = std::move(x);
    c.e = std::move(e);
    return c;
}

GilCommand GilCommand::ifgoto(Expr e, int target) {
    GilCommand c;
    c.kind = Kind::IfGoto;
    c.e = std::move(e);
    c.target = target;
    return c;
}

GilCommand GilCommand::call(std::string x, Expr fn, Expr arg) {
    GilCommand c;
    c.kind = Kind::Call;
    c.x = std::move(x);
    c.e = std::move(fn);
    c.e2 = std::move(arg);
    return c;
}

GilCommand GilCommand::actionCmd(std::string x, std::string action, Expr e) {
    GilCommand c;
    c.kind = Kind::Action;
    c.x = std::move(x);
    c.action = std::move(action);
    c.e = std::move(e);
    return c;
}

GilCommand GilCommand::symb(std::string x, int site) {
    GilCommand c;
    c.kind = Kind::Symb;
    c.x = std::move(x);
    c.site = site;
    return c;
}

GilCommand GilCommand::fresh(std::string x, int site) {
    GilCommand c;
    c.kind = Kind::Fresh;
    c.x = std::move(x);
    c.site = site;
    return c;
}

GilCommand GilCommand::ret(Expr e) {
    GilCommand c;
    c.kind = Kind::Return;
    c.e = std::move(e);
    return c;
}

GilCommand GilCommand::fail(Expr e) {
    GilCommand c;
    c.kind = Kind::Fail;
    c.e = std::move(e);
    return c;
}

GilCommand GilCommand::vanish() { return GilCommand{}; }

GilCommand GilCommand::fold(std::string pred, Expr e, int defIndex,
                            std::vector<std::pair<std::string, Expr>> bindings) {
    GilCommand c;
    c.kind = Kind::Fold;
    c.pred = std::move(pred);
    c.e = std::move(e);
    c.index = defIndex;
    c.bindings = std::move(bindings);
    return c;
}

GilCommand GilCommand::unfold(std::string pred, Expr e) {
    GilCommand c;
    c.kind = Kind::Unfold;
    c.pred = std::move(pred);
    c.e = std::move(e);
    return c;
}

GilCommand GilCommand::specCall(std::string x, Expr fn, Expr arg, int specIndex,
                                std::vector<std::pair<std::string, Expr>> bindings) {
    GilCommand c;
    c.kind = Kind::SpecCall;
    c.x = std::move(x);
    c.e = std::move(fn);
    c.e2 = std::move(arg);
    c.index = specIndex;
    c.bindings = std::move(bindings);
    return c;
}

bool GilCommand::operator==(const GilCommand& o) const {
    if (kind != o.kind) return false;
    auto bindingsEq = [&] {
        if (bindings.size() != o.bindings.size()) return false;
        for (size_t i = 0; i < bindings.size(); ++i)
            if (bindings[i].first != o.bindings[i].first || bindings[i].second != o.bindings[i].second)
                return false;
        return true;
    };
    switch (kind) {
        case Kind::Assign: return x == o.x && e == o.e;
        case Kind::IfGoto: return e == o.e && target == o.target;
        case Kind::Call: return x == o.x && e == o.e && e2 == o.e2;
        case Kind::Action: return x == o.x && action == o.action && e == o.e;
        case Kind::Symb:
        case Kind::Fresh: return x == o.x && site == o.site;
        case Kind::Return:
        case Kind::Fail: return e == o.e;
        case Kind::Vanish: return true;
        case Kind::Fold: return pred == o.pred && e == o.e && index == o.index && bindingsEq();
        case Kind::Unfold: return pred == o.pred && e == o.e;
        case Kind::SpecCall:
            return x == o.x && e == o.e && e2 == o.e2 && index == o.index && bindingsEq();
    }
    return false;
}

std::string GilCommand::show() const {
    std::ostringstream os;
    auto showBindings = [&] {
        os << " [" << index;
        for (const auto& [lv, be] : bindings) os << "; " << lv << ": " << be.show();
        os << "]";
    };
    switch (kind) {
        case Kind::Assign: os << x << " := " << e.show(); break;
        case Kind::IfGoto: os << "ifgoto (" << e.show() << ") " << target; break;
        case Kind::Call: os << x << " := " << e.show() << "(" << e2.show() << ")"; break;
        case Kind::Action: os << x << " := " << action << "(" << e.show() << ")"; break;
        case Kind::Symb: os << x << " := symb(" << site << ")"; break;
        case Kind::Fresh: os << x << " := fresh(" << site << ")"; break;
        case Kind::Return: os << "return " << e.show(); break;
        case Kind::Fail: os << "fail " << e.show(); break;
        case Kind::Vanish: os << "vanish"; break;
        case Kind::Fold:
            os << "fold " << pred << "(" << e.show() << ")";
            showBindings();
            break;
        case Kind::Unfold: os << "unfold " << pred << "(" << e.show() << ")"; break;
        case Kind::SpecCall:
            os << x << " := speccall " << e.show() << "(" << e2.show() << ")";
            showBindings();
            break;
    }
    return os.str();
}

std::string GilProc::show() const {
    std::ostringstream os;
    os << "proc " << name << "(" << param << ") {\n";
    for (size_t i = 0; i < body.size(); ++i) os << "  " << i << ": " << body[i].show() << "\n";
    os << "}";
    return os.str();
}

std::string GilProgram::show() const {
    std::string out;
    for (const auto& [_, p] : procs) {
        out += p.show();
        out += "\n";
    }
    return out;
}

std::vector<std::string> validateProgram(const GilProgram& prog) {
    std::vector<std::string> out;
    std::set<int> sites;
    for (const auto& [name, proc] : prog.procs) {
        for (size_t i = 0; i < proc.body.size(); ++i) {
            const GilCommand& c = proc.body[i];
            if (c.kind == GilCommand::Kind::IfGoto &&
                (c.target < 0 || static_cast<size_t>(c.target) >= proc.body.size()))
                out.push_back(name + ":" + std::to_string(i) + ": goto target " +
                              std::to_string(c.target) + " out of range");
            if ((c.kind == GilCommand::Kind::Call || c.kind == GilCommand::Kind::SpecCall) &&
                c.e.isLit() && c.e.litVal().isProc() && !prog.find(c.e.litVal().procName()))
                out.push_back(name + ":" + std::to_string(i) + ": unknown procedure " +
                              c.e.litVal().procName());
            if (c.kind == GilCommand::Kind::Symb || c.kind == GilCommand::Kind::Fresh) {
                if (!sites.insert(c.site).second)
                    out.push_back(name + ":" + std::to_string(i) + ": allocation site " +
                                  std::to_string(c.site) + " reused");
            }
        }
    }
    return out;
}

}  // namespace gilliant
