#pragma once

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gilliant/value.hpp"

namespace gilliant {

enum class Universe { UninterpretedSymbols, LogicalVars, ConcreteValues };

/// What an allocation site hands out: a fresh symbol id, a fresh logical
/// variable name, or a fresh concrete value.
struct AllocToken {
    enum class Kind { Symb, LVar, Conc };
    Kind kind = Kind::Symb;
    std::string name;  // Symb / LVar
    GilValue value;    // Conc

    static AllocToken symb(std::string id) { return {Kind::Symb, std::move(id), {}}; }
    static AllocToken lvar(std::string n) { return {Kind::LVar, std::move(n), {}}; }
    static AllocToken conc(GilValue v) { return {Kind::Conc, "", std::move(v)}; }

    bool matches(Universe u) const {
        switch (u) {
            case Universe::UninterpretedSymbols: return kind == Kind::Symb;
            case Universe::LogicalVars: return kind == Kind::LVar;
            case Universe::ConcreteValues: return kind == Kind::Conc;
        }
        return false;
    }

    std::string key() const;
    bool operator==(const AllocToken& o) const { return key() == o.key(); }
};

struct IncompatibleRecords : std::runtime_error {
    explicit IncompatibleRecords(const std::string& what) : std::runtime_error(what) {}
};

/// Allocation record: which values each site has handed out so far, plus a
/// script of answers that future allocations at a site must replay. Scripts
/// are how a record restricted with a longer one reproduces the longer run's
/// allocation decisions.
class AllocRecord {
public:
    AllocRecord() = default;

    /// Allocate at site j from the given universe. Deterministic: the result
    /// depends only on the record, the site, and the universe. Scripted
    /// answers take precedence over generated names.
    std::pair<AllocRecord, AllocToken> alloc(int site, Universe u) const;

    /// Number of values site j has handed out.
    size_t siteCount(int site) const;

    const std::map<int, std::vector<AllocToken>>& sites() const { return sites_; }
    const std::map<int, std::deque<AllocToken>>& scripts() const { return scripts_; }
    const std::set<std::string>& globalKeys() const { return global_; }

    bool operator==(const AllocRecord& o) const;
    bool operator!=(const AllocRecord& o) const { return !(*this == o); }

    std::string show() const;

private:
    std::map<int, std::vector<AllocToken>> sites_;
    std::map<int, std::deque<AllocToken>> scripts_;
    std::set<std::string> global_;
    long concNext_ = 0;

    friend AllocRecord restrictRecord(const AllocRecord& r1, const AllocRecord& r2);
    friend class WitnessBuilder;
};

/// Restriction on allocation records: keep r1's allocations, script the
/// remainder of r2's decisions so future allocations replay them. Partial:
/// throws IncompatibleRecords when the two records disagree on a committed
/// prefix at some site.
AllocRecord restrictRecord(const AllocRecord& r1, const AllocRecord& r2);

/// Builds the concrete-side record of a model witness: allocations and
/// scripts of a symbolic record mapped through a logical environment.
class WitnessBuilder {
public:
    /// Map each token through `mapTok`; symbols stay symbols, logical
    /// variables become the concrete values the environment assigns them.
    static AllocRecord map(const AllocRecord& rec,
                           const std::function<AllocToken(const AllocToken&)>& mapTok);
};

}  // namespace gilliant
