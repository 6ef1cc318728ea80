#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace residuum {

/// Geometric ponderation: a positive rational constant, or the affine norm
/// power rho(z) = (1 + |z|^2)^(-e/2) (the affine avatar of the projective
/// ||x||^(-e) normalizations). Both have exact first derivatives.
struct RhoSpec {
    enum class Kind { Constant, AffinePower };
    Kind kind = Kind::Constant;
    mpq_class constant = 1;
    mpq_class exponent = 0;

    static RhoSpec one() { return RhoSpec{}; }
    static RhoSpec constant_of(mpq_class c) {
        if (c <= 0) throw std::invalid_argument("rho constant must be positive");
        return RhoSpec{Kind::Constant, std::move(c), 0};
    }
    static RhoSpec affine_power(mpq_class e) {
        return RhoSpec{Kind::AffinePower, 1, std::move(e)};
    }
};

/// Algebraic ponderation q (nonnegative integers) plus per-function rho.
struct Weights {
    std::vector<unsigned> q;
    std::vector<RhoSpec> rho;

    static Weights trivial(std::size_t m) {
        Weights w;
        w.q.assign(m, 0);
        w.rho.assign(m, RhoSpec::one());
        return w;
    }

    void validate(std::size_t m) const {
        if (q.size() != m || rho.size() != m)
            throw std::invalid_argument("weight length mismatch");
    }
};

/// Pointwise rho data at u = |z|^2. Powers are kept in log space: the
/// Theorem-3.1 style weights push exponents far beyond double range.
///
/// For the affine power, dbar_i(rho^2) = dlog * rho^2 * z_i with
/// dlog = -e/(1+u), and dbar_i(rho) = dlog_half * rho * z_i.
struct RhoAt {
    double log_sq = 0.0;   // log(rho^2)
    double dlog = 0.0;     // -e/(1+u), zero for constants
    double dlog_half = 0.0;

    double sq() const { return std::exp(log_sq); }
};

inline RhoAt rho_at(const RhoSpec& spec, double u) {
    RhoAt r;
    if (spec.kind == RhoSpec::Kind::Constant) {
        double c = spec.constant.get_d();
        r.log_sq = 2.0 * std::log(c);
        return r;
    }
    double e = spec.exponent.get_d();
    r.log_sq = -e * std::log1p(u);
    r.dlog = -e / (1.0 + u);
    r.dlog_half = 0.5 * r.dlog;
    return r;
}

/// rho^2 * a^q with a = |f|^2 at the point; exact zero when f vanishes.
inline double stable_weight(const RhoAt& rho, double a, unsigned q) {
    if (q == 0) return std::exp(rho.log_sq);
    if (a <= 0.0) return 0.0;
    return std::exp(rho.log_sq + static_cast<double>(q) * std::log(a));
}

/// rho * conj(f)^q as magnitude-phase, stable for large q.
inline std::complex<double> stable_phase_weight(const RhoAt& rho, std::complex<double> f,
                                                double a, unsigned q) {
    if (q == 0) return std::exp(0.5 * rho.log_sq);
    if (a <= 0.0) return 0.0;
    double mag = std::exp(0.5 * rho.log_sq + 0.5 * static_cast<double>(q) * std::log(a));
    return std::polar(mag, -static_cast<double>(q) * std::arg(f));
}

} // namespace residuum
