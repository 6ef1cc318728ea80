#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "residuum/polynomial.hpp"

namespace residuum {

/// Total monomial order compatible with multiplication.
struct MonomialOrder {
    enum class Kind { Lex, GrevLex };

    Kind kind = Kind::GrevLex;
    std::vector<std::size_t> vars; // variable indices, most significant first

    static MonomialOrder grevlex(std::size_t nvars) {
        MonomialOrder o;
        o.kind = Kind::GrevLex;
        o.vars.resize(nvars);
        std::iota(o.vars.begin(), o.vars.end(), 0);
        return o;
    }
    static MonomialOrder lex(std::size_t nvars) {
        MonomialOrder o = grevlex(nvars);
        o.kind = Kind::Lex;
        return o;
    }

    // negative if a < b, zero if equal, positive if a > b
    int compare(const Exponents& a, const Exponents& b) const {
        if (kind == Kind::Lex) {
            for (std::size_t v : vars) {
                if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
            }
            return 0;
        }
        std::uint32_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db ? -1 : 1;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
            if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
        }
        return 0;
    }

    bool less(const Exponents& a, const Exponents& b) const { return compare(a, b) < 0; }
};

/// Leading term of a nonzero polynomial under the order.
inline std::pair<Exponents, GaussianRational> leading_term(const Polynomial& p,
                                                           const MonomialOrder& order) {
    if (p.is_zero()) throw std::invalid_argument("leading term of zero polynomial");
    auto best = p.terms().begin();
    for (auto it = std::next(best); it != p.terms().end(); ++it)
        if (order.less(best->first, it->first)) best = it;
    return {best->first, best->second};
}

inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

} // namespace residuum
