#pragma once

#include <optional>
#include <vector>

#include "residuum/groebner.hpp"

namespace residuum {

/// Default power-search cap: product of generator degrees plus one, in the
/// spirit of the Lojasiewicz-type exponent bound N = prod D_k.
inline std::size_t default_power_cap(const PolySystem& gens) {
    std::size_t cap = 1;
    for (const auto& g : gens.polys) cap *= std::max<std::uint32_t>(g.degree(), 1);
    return cap + 1;
}

struct RadicalMembership {
    bool member = false;
    // smallest k <= cap with p^k in the ideal, when the search found one
    std::optional<std::size_t> power;
    std::optional<MembershipCertificate> power_certificate;
};

/// Rabinowitsch test: p lies in the radical of (gens) iff 1 lies in
/// (gens, 1 - t*p) with one fresh variable t.
inline RadicalMembership radical_membership(const Polynomial& p, const PolySystem& gens,
                                            std::optional<std::size_t> cap = std::nullopt,
                                            std::size_t step_budget = kDefaultStepBudget) {
    const std::size_t n = gens.nvars;
    std::vector<std::size_t> lift(n);
    for (std::size_t i = 0; i < n; ++i) lift[i] = i;

    std::vector<Polynomial> ext;
    ext.reserve(gens.size() + 1);
    for (const auto& g : gens.polys) ext.push_back(g.remap(lift, n + 1));
    ext.push_back(Polynomial::constant(n + 1, GaussianRational(1)) -
                  Polynomial::variable(n + 1, n) * p.remap(lift, n + 1));

    GroebnerBasis gb(PolySystem(n + 1, std::move(ext)), MonomialOrder::grevlex(n + 1),
                     step_budget);
    RadicalMembership out;
    out.member = gb.is_unit_ideal();
    if (!out.member) return out;

    GroebnerBasis base(gens, MonomialOrder::grevlex(n), step_budget);
    std::size_t limit = cap.value_or(default_power_cap(gens));
    Polynomial pk = Polynomial::constant(n, GaussianRational(1));
    for (std::size_t k = 1; k <= limit; ++k) {
        pk *= p;
        MembershipCertificate cert = base.normal_form(pk);
        if (cert.in_ideal()) {
            out.power = k;
            out.power_certificate = std::move(cert);
            break;
        }
    }
    return out;
}

/// Smallest m with z_i^m in (gens), searched up to cap, with its exact
/// cofactor row.
inline std::optional<std::pair<std::size_t, MembershipCertificate>>
power_in_ideal(std::size_t var, const GroebnerBasis& gb, std::size_t cap) {
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    const std::size_t n = gb.input().nvars;
    for (std::size_t m = 1; m <= cap; ++m) {
        MembershipCertificate cert =
            gb.normal_form(Polynomial::variable(n, var, static_cast<std::uint32_t>(m)));
        if (cert.in_ideal()) return std::make_pair(m, std::move(cert));
    }
    return std::nullopt;
}

inline std::optional<std::pair<std::size_t, MembershipCertificate>>
power_in_ideal(std::size_t var, const PolySystem& gens,
               std::optional<std::size_t> cap = std::nullopt) {
    GroebnerBasis gb(gens, MonomialOrder::grevlex(gens.nvars));
    return power_in_ideal(var, gb, cap.value_or(default_power_cap(gens)));
}

/// Number of standard monomials (monomials outside the leading-term ideal),
/// when finite.
inline std::optional<std::size_t> quotient_dimension(const GroebnerBasis& gb) {
    const std::size_t n = gb.input().nvars;
    auto leads = gb.leading_exponents();

    // finite iff every variable has a pure power among the leading terms
    std::vector<std::uint32_t> bound(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : leads) {
            if (e[i] == 0) continue;
            bool pure = true;
            for (std::size_t j = 0; j < n && pure; ++j)
                if (j != i && e[j] != 0) pure = false;
            if (pure && (bound[i] == 0 || e[i] < bound[i])) bound[i] = e[i];
        }
        if (bound[i] == 0) return std::nullopt;
    }

    std::size_t count = 0;
    Exponents e(n, 0);
    while (true) {
        bool standard = true;
        for (const auto& l : leads)
            if (divides(l, e)) {
                standard = false;
                break;
            }
        if (standard) ++count;
        // odometer over the box prod [0, bound_i)
        std::size_t i = 0;
        while (i < n) {
            if (++e[i] < bound[i]) break;
            e[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return count;
}

inline std::optional<std::size_t> quotient_dimension(const PolySystem& gens) {
    return quotient_dimension(GroebnerBasis(gens, MonomialOrder::grevlex(gens.nvars)));
}

} // namespace residuum
