#include "gilliant/state_ctor.hpp"

#include <algorithm>
#include <sstream>

namespace gilliant {

std::string canonicalSymbolicState(const WhileSymbolicState& st) {
    std::ostringstream os;
    os << "mem=" << st.memory.showCanonical();
    os << " store={";
    bool first = true;
    for (const auto& [x, v] : st.store) {
        if (!first) os << ", ";
        first = false;
        os << x << "=" << simplify(v).show();
    }
    os << "} pc={";
    std::vector<std::string> pcs;
    for (const Expr& c : st.pc) pcs.push_back(simplify(c).show());
    std::sort(pcs.begin(), pcs.end());
    pcs.erase(std::unique(pcs.begin(), pcs.end()), pcs.end());
    for (size_t i = 0; i < pcs.size(); ++i) os << (i ? ", " : "") << pcs[i];
    os << "}";
    return os.str();
}

}  // namespace gilliant
