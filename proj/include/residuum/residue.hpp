#pragma once

#include <optional>
#include <vector>

#include "residuum/ideal.hpp"
#include "residuum/matrix.hpp"

namespace residuum {

/// The generators do not cut out the origin alone, so the symbolic oracle
/// does not apply; numeric evaluation is the fallback route.
struct VarietyNotPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Residue of h dz_1..dz_n over the monomial denominators z_i^{p_i}:
/// Cauchy coefficient extraction of z^{p-1} in h.
inline GaussianRational monomial_residue(const Polynomial& h, const Exponents& p) {
    if (h.nvars() != p.size()) throw std::invalid_argument("dimension mismatch");
    Exponents target(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) throw std::invalid_argument("monomial exponents must be >= 1");
        target[i] = p[i] - 1;
    }
    return h.coeff(target);
}

/// Rows certify z_i^{m_i} = sum_j A[i][j] * f_j exactly.
struct TransformationData {
    Exponents m;
    PolyMatrix a;
};

/// Certified monomial cover of the ideal: every coordinate power lands in
/// (f) within the cap, otherwise the variety is not the single point 0.
inline TransformationData transform_to_monomial(const PolySystem& f,
                                                std::optional<std::size_t> cap = std::nullopt) {
    if (f.size() != f.nvars) throw std::invalid_argument("square system required");
    GroebnerBasis gb(f, MonomialOrder::grevlex(f.nvars));
    std::size_t limit = cap.value_or(default_power_cap(f));
    TransformationData t;
    t.m.resize(f.nvars);
    t.a.resize(f.nvars);
    for (std::size_t i = 0; i < f.nvars; ++i) {
        auto hit = power_in_ideal(i, gb, limit);
        if (!hit)
            throw VarietyNotPointError("no coordinate power of variable " + std::to_string(i) +
                                       " lies in the ideal within cap " + std::to_string(limit));
        t.m[i] = static_cast<std::uint32_t>(hit->first);
        t.a[i] = std::move(hit->second.cofactors);
    }
    return t;
}

struct LocalResidueProblem {
    PolySystem f;  // n polynomials in n variables with V(f) = {0}
    Polynomial h;  // numerator
};

/// Grothendieck residue at the origin via the transformation law:
/// Res[h dz / f] = Res[h det(A) dz / z^m] when z_i^{m_i} = sum_j A_ij f_j.
inline GaussianRational local_residue(const LocalResidueProblem& prob,
                                      const TransformationData& t) {
    Polynomial weighted = prob.h * poly_determinant(t.a);
    return monomial_residue(weighted, t.m);
}

inline GaussianRational local_residue(const LocalResidueProblem& prob) {
    return local_residue(prob, transform_to_monomial(prob.f));
}

inline GaussianRational local_residue(const PolySystem& f, const Polynomial& h) {
    return local_residue(LocalResidueProblem{f, h});
}

struct DualityReport {
    std::size_t dim = 0;            // colength of the ideal
    GaussianRational res_jacobian;  // residue of the Jacobian numerator
    bool agree = false;
};

/// dim O/(f) against Res[J dz / f]; the two sides come from independent code
/// paths (staircase count vs transformation law).
inline DualityReport duality_check(const PolySystem& f) {
    TransformationData t = transform_to_monomial(f);
    auto dim = quotient_dimension(f);
    if (!dim) throw VarietyNotPointError("quotient dimension is infinite");
    DualityReport rep;
    rep.dim = *dim;
    rep.res_jacobian = local_residue(LocalResidueProblem{f, jacobian_det(f)}, t);
    rep.agree = rep.res_jacobian == GaussianRational(static_cast<long>(rep.dim));
    return rep;
}

/// Residue with numerator h * f_i; contract: always zero.
inline GaussianRational ideal_annihilation_check(const PolySystem& f, std::size_t i,
                                                 const Polynomial& h) {
    return local_residue(LocalResidueProblem{f, h * f[i]});
}

} // namespace residuum
