#pragma once

#include <vector>

#include "residuum/groebner.hpp"
#include "residuum/hefer.hpp"

namespace residuum {

// Independent certificate checks: nothing here touches the Groebner engine,
// only plain polynomial expansion.

inline bool verify_membership(const MembershipCertificate& cert, const PolySystem& gens) {
    if (cert.cofactors.size() != gens.size()) return false;
    Polynomial acc = cert.remainder;
    for (std::size_t j = 0; j < gens.size(); ++j) acc += cert.cofactors[j] * gens[j];
    return acc == cert.target;
}

inline bool verify_cofactor_row(const Polynomial& target, const std::vector<Polynomial>& row,
                                const PolySystem& gens) {
    if (row.size() != gens.size()) return false;
    Polynomial acc(gens.nvars);
    for (std::size_t j = 0; j < gens.size(); ++j) acc += row[j] * gens[j];
    return acc == target;
}

inline bool verify_groebner_representation(const GroebnerBasis& gb) {
    for (std::size_t i = 0; i < gb.size(); ++i)
        if (!verify_cofactor_row(gb[i], gb.cofactor_row(i), gb.input())) return false;
    return true;
}

inline bool verify_hefer(const PolySystem& fs, const HeferMatrix& h) {
    if (h.entries.size() != fs.size()) return false;
    for (std::size_t j = 0; j < fs.size(); ++j)
        if (!hefer_residual(fs[j], h.entries[j]).is_zero()) return false;
    return true;
}

} // namespace residuum
