#pragma once

#include <optional>

#include "gilliant/assertions.hpp"
#include "gilliant/logic.hpp"

namespace gilliant::wl {

/// The WHILE action alphabet. lookup/mutate/dispose serve compiled programs;
/// setCell/getCell are the producer/consumer pair behind the cell core
/// predicate.
extern const char* const kLookup;
extern const char* const kMutate;
extern const char* const kDispose;
extern const char* const kSetCell;
extern const char* const kGetCell;

extern const char* const kCellPred;  // the one WHILE core predicate

/// Concrete WHILE memory: finite map (location symbol, property) -> value.
class ConcreteWhileMemory {
public:
    using Key = std::pair<std::string, std::string>;

    ConcreteWhileMemory() = default;

    const std::map<Key, GilValue>& cells() const { return cells_; }
    std::optional<GilValue> get(const std::string& loc, const std::string& prop) const;
    void set(const std::string& loc, const std::string& prop, GilValue v);
    bool erase(const std::string& loc, const std::string& prop);
    size_t size() const { return cells_.size(); }

    bool operator==(const ConcreteWhileMemory& o) const { return cells_ == o.cells_; }
    bool operator!=(const ConcreteWhileMemory& o) const { return !(*this == o); }

    std::string show() const;

private:
    std::map<Key, GilValue> cells_;
};

/// Concrete action execution. nullopt encodes missing resource (or an
/// ill-shaped argument); mutate and dispose are total on well-shaped args.
std::optional<std::pair<ConcreteWhileMemory, GilValue>> ceaWhile(const std::string& action,
                                                                 const ConcreteWhileMemory& mem,
                                                                 const GilValue& arg);

/// One symbolic heap cell.
struct SymCell {
    Expr loc;
    std::string prop;
    Expr val;

    bool operator==(const SymCell& o) const {
        return prop == o.prop && loc == o.loc && val == o.val;
    }
    std::string show() const { return "(" + loc.show() + ", \"" + prop + "\") -> " + val.show(); }
};

/// Symbolic WHILE memory: a finite list of cells over logical expressions.
/// Well-formedness under a pc: no two cells with the same property have
/// pc-entailed-equal locations.
class SymbolicWhileMemory {
public:
    SymbolicWhileMemory() = default;
    explicit SymbolicWhileMemory(std::vector<SymCell> cells) : cells_(std::move(cells)) {}

    const std::vector<SymCell>& cells() const { return cells_; }
    std::vector<SymCell>& cells() { return cells_; }
    void add(SymCell c) { cells_.push_back(std::move(c)); }
    size_t size() const { return cells_.size(); }

    std::set<std::string> freeLVars() const;

    bool operator==(const SymbolicWhileMemory& o) const { return cells_ == o.cells_; }

    /// Order-insensitive canonical form, used by tests and reports.
    std::string showCanonical() const;
    std::string show() const;

private:
    std::vector<SymCell> cells_;
};

/// Fresh-variable source for bi-abduction fixes. Owned by the analysis run;
/// deterministic under depth-first exploration.
class FixContext {
public:
    std::string freshLVar() { return "#fix_" + std::to_string(next_++); }

private:
    long next_ = 0;
};

struct SymBranch {
    SymbolicWhileMemory mem;
    Expr value;
    PathCondition pcExt;  // conjuncts the state constructor adds to the pc
};

struct SymActionResult {
    std::vector<SymBranch> branches;
    std::vector<Fix> fixes;                  // bi-abduction suggestions, when enabled
    std::optional<EngineError> error;        // set when no branch applies

    static SymActionResult one(SymbolicWhileMemory mem, Expr value, PathCondition ext = {}) {
        SymActionResult r;
        r.branches.push_back({std::move(mem), std::move(value), std::move(ext)});
        return r;
    }
    static SymActionResult err(EngineError::Kind k, const std::string& what) {
        SymActionResult r;
        r.error = EngineError(k, what);
        return r;
    }
};

/// Symbolic action execution under a path condition. Aliasing that the pc
/// decides follows the direct rules; satisfiable-but-undecided aliasing
/// branches with the deciding constraint passed back in pcExt. When a lookup
/// or getCell provably has no matching cell and fixes are enabled, the result
/// carries the missing-cell fix instead of an error.
SymActionResult seaWhile(const std::string& action, const SymbolicWhileMemory& mem,
                         const Expr& arg, const PathCondition& pc, const Solver& solver,
                         FixContext* fixCtx = nullptr);

/// Piecemeal interpretation of a symbolic memory under a logical environment:
/// evaluate every cell and compose by disjoint union. nullopt when a cell
/// fails to evaluate, a location is not a symbol, or two cells collide (the
/// environment is not a model).
std::optional<ConcreteWhileMemory> interpretMemory(const SymbolicWhileMemory& mem,
                                                   const LogicalEnv& env);

/// Checked invariant: no two same-property cells with pc-entailed-equal
/// locations.
bool memWellFormed(const SymbolicWhileMemory& mem, const PathCondition& pc, const Solver& solver);

}  // namespace gilliant::wl
