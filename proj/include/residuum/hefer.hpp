#pragma once

#include <vector>

#include "residuum/matrix.hpp"
#include "residuum/polynomial.hpp"

namespace residuum {

/// Rows j = functions, columns k = coordinates; entries live in the 2n-variable
/// ring (z_1..z_n, zeta_1..zeta_n) and satisfy, for each j,
///   f_j(z) - f_j(zeta) = sum_k g_jk(z,zeta) * (z_k - zeta_k)
/// exactly as a polynomial identity.
struct HeferMatrix {
    std::size_t n = 0;                            // coordinate count
    std::vector<std::vector<Polynomial>> entries; // m rows of n polynomials in 2n vars
};

/// Telescoping decomposition of p(z) - p(zeta). The k-th telescoping
/// difference swaps z_k for zeta_k and divides exactly by (z_k - zeta_k).
inline std::vector<Polynomial> hefer_decompose(const Polynomial& p) {
    const std::size_t n = p.nvars();
    const std::size_t N = 2 * n;
    std::vector<Polynomial> g;
    g.reserve(n);
    // mixed_k: first k variables mapped to zeta, the rest to z
    auto mixed = [&](std::size_t k) {
        std::vector<std::size_t> map(n);
        for (std::size_t i = 0; i < n; ++i) map[i] = i < k ? n + i : i;
        return p.remap(map, N);
    };
    for (std::size_t k = 0; k < n; ++k) {
        Polynomial diff = mixed(k) - mixed(k + 1);
        Polynomial divisor =
            Polynomial::variable(N, k) - Polynomial::variable(N, n + k);
        if (diff.is_zero()) {
            g.push_back(Polynomial(N));
            continue;
        }
        auto q = try_divide_exact(diff, divisor);
        if (!q) throw std::logic_error("telescoping difference not divisible");
        g.push_back(std::move(*q));
    }
    return g;
}

inline HeferMatrix hefer_matrix(const PolySystem& fs) {
    HeferMatrix h;
    h.n = fs.nvars;
    for (const auto& f : fs.polys) h.entries.push_back(hefer_decompose(f));
    return h;
}

/// Residual p(z) - p(zeta) - sum_k g_k (z_k - zeta_k); zero iff decomposition valid.
inline Polynomial hefer_residual(const Polynomial& p, const std::vector<Polynomial>& g) {
    const std::size_t n = p.nvars();
    const std::size_t N = 2 * n;
    std::vector<std::size_t> to_z(n), to_zeta(n);
    for (std::size_t i = 0; i < n; ++i) {
        to_z[i] = i;
        to_zeta[i] = n + i;
    }
    Polynomial r = p.remap(to_z, N) - p.remap(to_zeta, N);
    for (std::size_t k = 0; k < n; ++k)
        r -= g[k] * (Polynomial::variable(N, k) - Polynomial::variable(N, n + k));
    return r;
}

} // namespace residuum
