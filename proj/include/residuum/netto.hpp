#pragma once

#include <optional>
#include <vector>

#include "residuum/ideal.hpp"
#include "residuum/matrix.hpp"
#include "residuum/residue.hpp"

namespace residuum {

enum class NettoVerdict { TheoremVerified, HypothesisNotDetected, Anomaly };

/// Certificate that P_j lies in the radical of (P_1..P_nu).
struct RadicalCert {
    std::size_t j = 0; // generator index (0-based), j >= nu
    bool member = false;
    std::optional<std::size_t> power;
    std::optional<MembershipCertificate> certificate;
};

struct NettoReport {
    std::optional<std::size_t> nu; // smallest working prefix length
    std::vector<RadicalCert> radical_certs;
    std::size_t n_bound = 0; // prod of the first nu degrees when nu is present
    Polynomial jacobian;
    MembershipCertificate membership;
    NettoVerdict verdict = NettoVerdict::HypothesisNotDetected;
};

/// Exponent bound prod D_k from the Lojasiewicz/Briancon-Skoda remark.
inline std::size_t netto_n_bound(const std::vector<std::uint32_t>& degrees) {
    std::size_t b = 1;
    for (auto d : degrees) {
        if (d == 0) throw std::invalid_argument("degrees must be positive");
        b *= d;
    }
    return b;
}

/// Smallest nu < n with every later generator in rad(P_1..P_nu); detection is
/// semantic (radical membership), not syntactic.
inline std::optional<std::size_t> detect_nu(const PolySystem& p,
                                            std::vector<RadicalCert>* certs = nullptr,
                                            std::size_t step_budget = kDefaultStepBudget) {
    if (p.size() != p.nvars) throw std::invalid_argument("square system required");
    const std::size_t n = p.size();
    for (std::size_t nu = 1; nu < n; ++nu) {
        PolySystem prefix(p.nvars,
                          std::vector<Polynomial>(p.polys.begin(), p.polys.begin() + nu));
        std::vector<RadicalCert> found;
        bool all = true;
        for (std::size_t j = nu; j < n; ++j) {
            RadicalMembership r = radical_membership(p[j], prefix, std::nullopt, step_budget);
            if (!r.member) {
                all = false;
                break;
            }
            found.push_back({j, true, r.power, std::move(r.power_certificate)});
        }
        if (all) {
            if (certs) *certs = std::move(found);
            return nu;
        }
    }
    return std::nullopt;
}

/// Full prover: detect the hypothesis, compute the Jacobian, divide it by the
/// ideal and grade the outcome. Anomaly (hypothesis holds, Jacobian outside
/// the ideal) would contradict the theorem and marks an implementation bug.
inline NettoReport netto_prove(const PolySystem& p,
                               std::size_t step_budget = kDefaultStepBudget) {
    NettoReport rep;
    rep.nu = detect_nu(p, &rep.radical_certs, step_budget);
    rep.jacobian = jacobian_det(p);
    GroebnerBasis gb(p, MonomialOrder::grevlex(p.nvars), step_budget);
    rep.membership = gb.normal_form(rep.jacobian);
    if (rep.nu) {
        std::vector<std::uint32_t> degs;
        for (std::size_t k = 0; k < *rep.nu; ++k)
            degs.push_back(std::max<std::uint32_t>(p[k].degree(), 1));
        rep.n_bound = netto_n_bound(degs);
        rep.verdict = rep.membership.in_ideal() ? NettoVerdict::TheoremVerified
                                                : NettoVerdict::Anomaly;
    } else {
        rep.verdict = NettoVerdict::HypothesisNotDetected;
    }
    return rep;
}

struct RegularControlReport {
    bool jacobian_outside_ideal = false;
    DualityReport duality;
};

/// Classical negative control: for a regular sequence cutting out the origin
/// the Jacobian is never in the ideal, and its residue equals the colength.
inline RegularControlReport regular_control(const PolySystem& f) {
    RegularControlReport rep;
    rep.duality = duality_check(f); // throws VarietyNotPointError when not certified
    GroebnerBasis gb(f, MonomialOrder::grevlex(f.nvars));
    rep.jacobian_outside_ideal = !gb.normal_form(jacobian_det(f)).in_ideal();
    return rep;
}

/// Seeded nu = 1 family: P_1 = c x, P_j = x u_j + x^2 v_j, every generator a
/// multiple of x, so the zero set is V(P_1) by construction.
inline PolySystem netto_family_instance(std::size_t n, std::uint64_t seed) {
    SampleRng rng(seed, 0);
    std::vector<Polynomial> ps;
    Polynomial x = Polynomial::variable(n, 0);
    ps.push_back(x.scaled(GaussianRational(rng.next_int(1, 5))));
    auto random_poly = [&](std::uint32_t maxdeg) {
        Polynomial q(n);
        for (int t = 0; t < 4; ++t) {
            Exponents e(n, 0);
            std::uint32_t budget = maxdeg;
            for (std::size_t i = 0; i < n; ++i) {
                auto d = static_cast<std::uint32_t>(rng.next_int(0, budget));
                e[i] = d;
                budget -= d;
            }
            q.add_term(e, GaussianRational(rng.next_int(-3, 3)));
        }
        return q;
    };
    for (std::size_t j = 1; j < n; ++j) {
        Polynomial u = random_poly(3), v = random_poly(2);
        Polynomial pj = x * u + x * x * v;
        if (pj.is_zero()) pj = x * x; // keep the generator nonzero
        ps.push_back(std::move(pj));
    }
    return PolySystem(n, std::move(ps));
}

} // namespace residuum
