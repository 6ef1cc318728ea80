#pragma once

#include <complex>
#include <vector>

#include "residuum/parse.hpp"
#include "residuum/polynomial.hpp"
#include "residuum/rng.hpp"

namespace testutil {

using residuum::Exponents;
using residuum::GaussianRational;
using residuum::Polynomial;
using residuum::PolySystem;

inline Polynomial P(const std::string& text, const std::vector<std::string>& vars) {
    return residuum::parse_polynomial(text, vars);
}

inline PolySystem sys(const std::vector<std::string>& texts,
                      const std::vector<std::string>& vars) {
    std::vector<Polynomial> ps;
    for (const auto& t : texts) ps.push_back(P(t, vars));
    return PolySystem(vars.size(), std::move(ps));
}

/// Random dense-ish polynomial with small integer (Gaussian) coefficients.
inline Polynomial random_poly(std::size_t nvars, std::uint32_t max_degree,
                              residuum::SampleRng& rng, bool gaussian = false) {
    Polynomial p(nvars);
    std::size_t terms = 2 + static_cast<std::size_t>(rng.next_int(0, 4));
    for (std::size_t t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        std::uint32_t budget = max_degree;
        for (std::size_t i = 0; i < nvars; ++i) {
            std::uint32_t d = static_cast<std::uint32_t>(rng.next_int(0, budget));
            e[i] = d;
            budget -= d;
        }
        long re = rng.next_int(-5, 5);
        long im = gaussian ? rng.next_int(-5, 5) : 0;
        p.add_term(e, GaussianRational(mpq_class(re), mpq_class(im)));
    }
    return p;
}

inline std::vector<GaussianRational> random_rational_point(std::size_t nvars,
                                                           residuum::SampleRng& rng) {
    std::vector<GaussianRational> pt;
    for (std::size_t i = 0; i < nvars; ++i)
        pt.emplace_back(mpq_class(rng.next_int(-9, 9), 4), mpq_class(rng.next_int(-9, 9), 4));
    return pt;
}

} // namespace testutil
