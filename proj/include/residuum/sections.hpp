#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "residuum/polynomial.hpp"
#include "residuum/rng.hpp"

namespace residuum {

/// Random integer coefficients stand in for generic complex values; detected
/// degeneracy downstream re-samples with an incremented seed.
inline constexpr long kGenericCoeffBound = 997;

struct GenericSections {
    Polynomial lambda;  // linear form sum beta_0l x_l
    PolySystem q;       // d combinations, homogeneous of degree D1
    std::vector<std::vector<long>> beta; // rows j = 1..d over generators
    std::vector<long> beta0;             // coefficients of lambda
    // Q_j and lambda are normalized by the max |beta| of their row: the cycle
    // currents are scale invariant and unit-size coefficients keep the
    // tau-concentration scale resolvable.
};

/// Sections Q_j = sum_k beta_jk Lambda^{D1 - Dk} P_k for homogeneous P with
/// degrees D1 >= ... >= Dm; deterministic for a given seed.
inline GenericSections generic_sections(const PolySystem& p, std::size_t d, std::uint64_t seed) {
    if (d < 1 || d > p.size()) throw std::invalid_argument("section count out of range");
    std::vector<std::uint32_t> deg(p.size());
    std::uint32_t d1 = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!p[k].is_homogeneous() || p[k].is_zero())
            throw std::invalid_argument("generators must be nonzero homogeneous");
        deg[k] = p[k].degree();
        d1 = std::max(d1, deg[k]);
    }

    GenericSections out;
    SampleRng rng(seed, 0);
    auto draw = [&rng]() {
        long v = 0;
        while (v == 0) v = rng.next_int(-kGenericCoeffBound, kGenericCoeffBound);
        return v;
    };

    const std::size_t nv = p.nvars;
    out.lambda = Polynomial(nv);
    out.beta0.resize(nv);
    long max0 = 1;
    for (std::size_t l = 0; l < nv; ++l) {
        out.beta0[l] = draw();
        max0 = std::max(max0, std::abs(out.beta0[l]));
    }
    for (std::size_t l = 0; l < nv; ++l)
        out.lambda +=
            Polynomial::variable(nv, l).scaled(GaussianRational(out.beta0[l], max0));

    std::vector<Polynomial> lambda_pow(d1 + 1, Polynomial::constant(nv, GaussianRational(1)));
    for (std::uint32_t e = 1; e <= d1; ++e) lambda_pow[e] = lambda_pow[e - 1] * out.lambda;

    std::vector<Polynomial> qs;
    out.beta.assign(d, std::vector<long>(p.size()));
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < p.size(); ++k) out.beta[j][k] = draw();
        long maxj = 1;
        for (long b : out.beta[j]) maxj = std::max(maxj, std::abs(b));
        Polynomial qj(nv);
        for (std::size_t k = 0; k < p.size(); ++k)
            qj += (lambda_pow[d1 - deg[k]] * p[k])
                      .scaled(GaussianRational(out.beta[j][k], maxj));
        qs.push_back(std::move(qj));
    }
    out.q = PolySystem(nv, std::move(qs));
    return out;
}

} // namespace residuum
