#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gilliant/logic.hpp"
#include "gilliant/program.hpp"

namespace gilliant {

/// Separation-logic assertions over a core-predicate alphabet: emp, pure
/// boolean expressions, core predicates, user predicates, and star.
/// Immutable; copies share structure.
class Assertion {
public:
    enum class Kind { Emp, Pure, CorePred, UserPred, Star };

    Assertion() : Assertion(emp()) {}

    static Assertion emp();
    static Assertion pure(Expr e);
    static Assertion core(std::string pred, Expr arg);
    static Assertion user(std::string pred, Expr arg);
    static Assertion star(Assertion l, Assertion r);
    /// emp for an empty list, the starred chain otherwise.
    static Assertion starAll(const std::vector<Assertion>& parts);

    Kind kind() const { return n_->kind; }
    const Expr& expr() const { return n_->e; }
    const std::string& pred() const { return n_->pred; }
    Assertion lhs() const { return Assertion(n_->l); }
    Assertion rhs() const { return Assertion(n_->r); }

    bool isEmp() const { return kind() == Kind::Emp; }

    /// Star-flattened parts, emp dropped (unless the whole assertion is emp).
    std::vector<Assertion> flatten() const;

    void collectLVars(std::set<std::string>& out) const;
    std::set<std::string> freeLVars() const;
    void collectPVars(std::set<std::string>& out) const;

    Assertion substLVars(const std::map<std::string, Expr>& subst) const;

    bool operator==(const Assertion& o) const;
    bool operator!=(const Assertion& o) const { return !(*this == o); }

    std::string show() const;

private:
    struct Node {
        Kind kind = Kind::Emp;
        Expr e;
        std::string pred;
        std::shared_ptr<const Node> l, r;
    };

    explicit Assertion(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    std::shared_ptr<const Node> n_;
};

/// A missing-resource fix: an assertion built from core predicates and pure
/// formulas that, produced onto the failing state, lets the action succeed.
using Fix = Assertion;

struct PredicateDef {
    std::string name;
    std::string param;
    std::vector<Assertion> defs;  // alternatives
};

struct Spec {
    Assertion pre;
    std::string proc;
    std::string param;
    Assertion post;
    Expr ret;

    std::string show() const;
};

/// A GIL program together with its predicate table and per-procedure
/// specifications.
struct AnnotatedProgram {
    GilProgram prog;
    std::map<std::string, PredicateDef> predicates;
    std::map<std::string, std::vector<Spec>> specs;

    const PredicateDef* findPred(const std::string& name) const {
        auto it = predicates.find(name);
        return it == predicates.end() ? nullptr : &it->second;
    }
    const Spec* findSpec(const std::string& proc, int index) const {
        auto it = specs.find(proc);
        if (it == specs.end() || index < 0 || static_cast<size_t>(index) >= it->second.size())
            return nullptr;
        return &it->second[static_cast<size_t>(index)];
    }
};

}  // namespace gilliant
