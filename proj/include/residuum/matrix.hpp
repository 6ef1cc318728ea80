#pragma once

#include <optional>
#include <vector>

#include "residuum/polynomial.hpp"

namespace residuum {

/// Leading term under the plain lexicographic order on exponent vectors
/// (the term map's native key order). Any monomial order works for exact
/// division; this one needs no extra bookkeeping.
inline std::pair<Exponents, GaussianRational> lex_leading_term(const Polynomial& p) {
    auto it = std::prev(p.terms().end());
    return {it->first, it->second};
}

/// Exact quotient p / q, or nullopt when q does not divide p.
inline std::optional<Polynomial> try_divide_exact(Polynomial p, const Polynomial& q) {
    if (q.is_zero()) return std::nullopt;
    const std::size_t n = p.nvars();
    Polynomial quotient(n);
    auto [eq, cq] = lex_leading_term(q);
    while (!p.is_zero()) {
        auto [ep, cp] = lex_leading_term(p);
        Exponents diff(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (ep[i] < eq[i]) return std::nullopt;
            diff[i] = ep[i] - eq[i];
        }
        Polynomial t = Polynomial::monomial(n, diff, cp / cq);
        quotient += t;
        p -= t * q;
    }
    return quotient;
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Exact determinant by fraction-free (Bareiss) elimination; every division
/// performed is exact in the polynomial ring.
inline Polynomial poly_determinant(PolyMatrix m) {
    const std::size_t k = m.size();
    if (k == 0) throw std::invalid_argument("empty matrix");
    const std::size_t nv = m[0][0].nvars();
    for (const auto& row : m)
        if (row.size() != k) throw std::invalid_argument("non-square matrix");

    Polynomial prev = Polynomial::constant(nv, GaussianRational(1));
    int sign = 1;
    for (std::size_t r = 0; r + 1 < k; ++r) {
        if (m[r][r].is_zero()) {
            std::size_t swap_row = r + 1;
            while (swap_row < k && m[swap_row][r].is_zero()) ++swap_row;
            if (swap_row == k) return Polynomial(nv); // singular
            std::swap(m[r], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < k; ++i) {
            for (std::size_t j = r + 1; j < k; ++j) {
                Polynomial num = m[i][j] * m[r][r] - m[i][r] * m[r][j];
                auto q = try_divide_exact(std::move(num), prev);
                if (!q) throw std::logic_error("Bareiss division not exact");
                m[i][j] = std::move(*q);
            }
            m[i][r] = Polynomial(nv);
        }
        prev = m[r][r];
    }
    Polynomial det = m[k - 1][k - 1];
    return sign < 0 ? -det : det;
}

/// Determinant of the matrix of partials of a square system.
inline Polynomial jacobian_det(const PolySystem& fs) {
    if (fs.size() != fs.nvars) throw std::invalid_argument("non-square system");
    PolyMatrix m(fs.size(), std::vector<Polynomial>(fs.size(), Polynomial(fs.nvars)));
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = 0; j < fs.nvars; ++j) m[i][j] = fs[i].partial(j);
    return poly_determinant(std::move(m));
}

} // namespace residuum
