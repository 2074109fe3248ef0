#include "gilliant/alloc.hpp"

#include <sstream>

namespace gilliant {

std::string AllocToken::key() const {
    switch (kind) {
        case Kind::Symb: return "s:" + name;
        case Kind::LVar: return "l:" + name;
        case Kind::Conc: return "c:" + value.show();
    }
    return "?";
}

std::pair<AllocRecord, AllocToken> AllocRecord::alloc(int site, Universe u) const {
    AllocRecord next = *this;
    AllocToken tok;

    auto sit = next.scripts_.find(site);
    if (sit != next.scripts_.end() && !sit->second.empty()) {
        tok = sit->second.front();
        if (!tok.matches(u))
            throw IncompatibleRecords("scripted allocation at site " + std::to_string(site) +
                                      " does not belong to the requested universe");
        sit->second.pop_front();
        if (sit->second.empty()) next.scripts_.erase(sit);
    } else {
        size_t k = next.sites_[site].size();
        switch (u) {
            case Universe::UninterpretedSymbols:
                tok = AllocToken::symb("$l_" + std::to_string(site) + "_" + std::to_string(k));
                break;
            case Universe::LogicalVars:
                tok = AllocToken::lvar("#v_" + std::to_string(site) + "_" + std::to_string(k));
                break;
            case Universe::ConcreteValues: {
                long n = next.concNext_;
                while (next.global_.count(AllocToken::conc(GilValue::num(n)).key())) ++n;
                tok = AllocToken::conc(GilValue::num(n));
                next.concNext_ = n + 1;
                break;
            }
        }
    }

    std::string key = tok.key();
    if (next.global_.count(key))
        throw IncompatibleRecords("allocation record would hand out " + key + " twice");
    next.sites_[site].push_back(tok);
    next.global_.insert(std::move(key));
    return {std::move(next), std::move(tok)};
}

size_t AllocRecord::siteCount(int site) const {
    auto it = sites_.find(site);
    return it == sites_.end() ? 0 : it->second.size();
}

bool AllocRecord::operator==(const AllocRecord& o) const {
    auto tokensEq = [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    };
    if (sites_.size() != o.sites_.size() || scripts_.size() != o.scripts_.size()) return false;
    for (const auto& [j, toks] : sites_) {
        auto it = o.sites_.find(j);
        if (it == o.sites_.end() || !tokensEq(toks, it->second)) return false;
    }
    for (const auto& [j, toks] : scripts_) {
        auto it = o.scripts_.find(j);
        if (it == o.scripts_.end() || !tokensEq(toks, it->second)) return false;
    }
    return global_ == o.global_ && concNext_ == o.concNext_;
}

std::string AllocRecord::show() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [j, toks] : sites_) {
        if (!first) os << "; ";
        first = false;
        os << j << ": ";
        for (size_t i = 0; i < toks.size(); ++i) os << (i ? "," : "") << toks[i].key();
        auto sit = scripts_.find(j);
        if (sit != scripts_.end()) {
            os << " !";
            for (const auto& t : sit->second) os << t.key() << ",";
        }
    }
    for (const auto& [j, toks] : scripts_) {
        if (sites_.count(j)) continue;
        if (!first) os << "; ";
        first = false;
        os << j << ": !";
        for (const auto& t : toks) os << t.key() << ",";
    }
    os << "}";
    return os.str();
}

namespace {

std::vector<AllocToken> futureView(const AllocRecord& r, int site) {
    std::vector<AllocToken> out;
    auto it = r.sites().find(site);
    if (it != r.sites().end()) out = it->second;
    auto sit = r.scripts().find(site);
    if (sit != r.scripts().end()) out.insert(out.end(), sit->second.begin(), sit->second.end());
    return out;
}

bool isPrefix(const std::vector<AllocToken>& a, const std::vector<AllocToken>& b) {
    if (a.size() > b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

}  // namespace

AllocRecord restrictRecord(const AllocRecord& r1, const AllocRecord& r2) {
    AllocRecord out = r1;
    out.scripts_.clear();

    std::set<int> sitesOfInterest;
    for (const auto& [j, _] : r1.sites()) sitesOfInterest.insert(j);
    for (const auto& [j, _] : r1.scripts()) sitesOfInterest.insert(j);
    for (const auto& [j, _] : r2.sites()) sitesOfInterest.insert(j);
    for (const auto& [j, _] : r2.scripts()) sitesOfInterest.insert(j);

    for (int j : sitesOfInterest) {
        std::vector<AllocToken> f1 = futureView(r1, j);
        std::vector<AllocToken> f2 = futureView(r2, j);
        const std::vector<AllocToken>* longer = nullptr;
        if (isPrefix(f1, f2))
            longer = &f2;
        else if (isPrefix(f2, f1))
            longer = &f1;
        else
            throw IncompatibleRecords("records disagree on the allocation prefix of site " +
                                      std::to_string(j));
        size_t committed = r1.siteCount(j);
        if (committed > longer->size())
            throw IncompatibleRecords("record has committed past the merged future of site " +
                                      std::to_string(j));
        if (committed < longer->size()) {
            std::deque<AllocToken> tail(longer->begin() + static_cast<long>(committed), longer->end());
            out.scripts_[j] = std::move(tail);
        }
    }
    return out;
}

AllocRecord WitnessBuilder::map(const AllocRecord& rec,
                                const std::function<AllocToken(const AllocToken&)>& mapTok) {
    AllocRecord out;
    out.concNext_ = rec.concNext_;
    for (const auto& [j, toks] : rec.sites_) {
        for (const auto& t : toks) {
            AllocToken m = mapTok(t);
            out.sites_[j].push_back(m);
            out.global_.insert(m.key());
        }
    }
    for (const auto& [j, toks] : rec.scripts_) {
        for (const auto& t : toks) out.scripts_[j].push_back(mapTok(t));
    }
    return out;
}

}  // namespace gilliant
