#pragma once

#include <memory>

#include "gilliant/assertions.hpp"

namespace gilliant::wl {

struct WhileStmt;
using StmtPtr = std::shared_ptr<const WhileStmt>;

/// WHILE statements. Property names are string literals; procedures take a
/// single parameter (pack lists to pass more). fold/unfold/speccall only make
/// sense under the verification semantics but parse anywhere.
struct WhileStmt {
    enum class Kind {
        Assign,
        Skip,
        Seq,
        If,
        While,
        Call,
        Return,
        Assume,
        Assert,
        New,
        Lookup,
        Mutate,
        Dispose,
        Fold,
        Unfold,
        SpecCall
    };

    Kind kind = Kind::Skip;
    std::string x;      // assignment / call / new / lookup target
    Expr e;             // main expression
    Expr e2;            // mutate rhs
    std::string prop;   // lookup / mutate property
    std::string fname;  // call target, fold/unfold predicate, speccall target
    std::vector<std::pair<std::string, Expr>> fields;  // new: property -> initializer
    StmtPtr s1, s2;     // seq / if / while children
    int index = 0;      // fold definition index / speccall spec index
    std::vector<std::pair<std::string, Expr>> bindings;

    static StmtPtr assign(std::string x, Expr e);
    static StmtPtr skip();
    static StmtPtr seq(StmtPtr a, StmtPtr b);
    static StmtPtr ifElse(Expr cond, StmtPtr thenS, StmtPtr elseS);
    static StmtPtr whileLoop(Expr cond, StmtPtr body);
    static StmtPtr call(std::string x, std::string f, Expr arg);
    static StmtPtr ret(Expr e);
    static StmtPtr assume(Expr e);
    static StmtPtr assertStmt(Expr e);
    static StmtPtr newObj(std::string x, std::vector<std::pair<std::string, Expr>> fields);
    static StmtPtr lookup(std::string x, Expr obj, std::string prop);
    static StmtPtr mutate(Expr obj, std::string prop, Expr val);
    static StmtPtr dispose(Expr obj);
    static StmtPtr fold(std::string pred, Expr arg, int defIndex,
                        std::vector<std::pair<std::string, Expr>> bindings);
    static StmtPtr unfold(std::string pred, Expr arg);
    static StmtPtr specCall(std::string x, std::string f, Expr arg, int specIndex,
                            std::vector<std::pair<std::string, Expr>> bindings);

    std::string show(int indent = 0) const;
};

struct WhileProc {
    std::string name;
    std::string param;
    StmtPtr body;
};

struct WhileProgram {
    std::vector<WhileProc> procs;  // declaration order drives allocation-site numbering
    std::map<std::string, PredicateDef> predicates;
    std::map<std::string, std::vector<Spec>> specs;

    const WhileProc* find(const std::string& name) const {
        for (const auto& p : procs)
            if (p.name == name) return &p;
        return nullptr;
    }
    std::string show() const;
};

}  // namespace gilliant::wl
