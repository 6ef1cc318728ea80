#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "residuum/forms.hpp"
#include "residuum/rng.hpp"

namespace residuum {

enum class Scheme { TensorGrid, MonteCarlo };

struct QuadratureConfig {
    Scheme scheme = Scheme::TensorGrid;
    std::size_t samples = 200'000;
    double radius = 1.0;
    std::vector<double> tau_ladder = {1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3};
    std::uint64_t seed = 1;
    double target_tolerance = 1e-2;
    unsigned threads = 0; // 0: hardware count, capped by RESIDUUM_THREADS

    void validate() const {
        if (tau_ladder.size() < 3) throw std::invalid_argument("tau ladder needs >= 3 entries");
        for (std::size_t i = 0; i + 1 < tau_ladder.size(); ++i)
            if (!(tau_ladder[i] > tau_ladder[i + 1]) || tau_ladder.back() <= 0.0)
                throw std::invalid_argument("tau ladder must be strictly decreasing positive");
        if (samples == 0 || radius <= 0.0) throw std::invalid_argument("bad quadrature config");
    }
};

struct Estimate {
    Complex value{};
    double error_bar = 0.0;
    std::vector<Complex> ladder_values;
    bool converged = false;
    bool degenerate_fit = false;
};

inline unsigned resolve_threads(unsigned requested) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned cap = hw;
    if (const char* env = std::getenv("RESIDUUM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    unsigned t = requested == 0 ? hw : requested;
    return std::max(1u, std::min(t, cap));
}

/// Deterministic map-reduce: points are summed in fixed blocks of 4096 and the
/// block sums combined pairwise in index order, so any thread count produces
/// bit-identical output.
inline std::vector<Complex> parallel_block_sum(
    std::size_t total, std::size_t width, unsigned threads,
    const std::function<void(std::size_t, std::vector<Complex>&)>& accumulate_point) {
    constexpr std::size_t kBlock = 4096;
    const std::size_t nblocks = (total + kBlock - 1) / kBlock;
    std::vector<std::vector<Complex>> block_sums(nblocks);

    unsigned t = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(nblocks, 1));
    auto worker = [&](unsigned wid) {
        for (std::size_t b = wid; b < nblocks; b += t) {
            std::vector<Complex> acc(width, Complex(0.0));
            const std::size_t lo = b * kBlock;
            const std::size_t hi = std::min(total, lo + kBlock);
            for (std::size_t i = lo; i < hi; ++i) accumulate_point(i, acc);
            block_sums[b] = std::move(acc);
        }
    };
    if (t <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(t);
        for (unsigned w = 0; w < t; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    // pairwise tree over block index
    std::vector<std::vector<Complex>> level = std::move(block_sums);
    while (level.size() > 1) {
        std::vector<std::vector<Complex>> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            std::vector<Complex> s(width);
            for (std::size_t k = 0; k < width; ++k) s[k] = level[i][k] + level[i + 1][k];
            next.push_back(std::move(s));
        }
        if (level.size() & 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    return level.empty() ? std::vector<Complex>(width, Complex(0.0)) : std::move(level[0]);
}

/// Gauss-Legendre nodes/weights on [0,1].
inline void gauss_legendre_01(std::size_t n, std::vector<double>& nodes,
                              std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (std::size_t j = 2; j <= n; ++j) {
            double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[n - 1 - k] = 0.5 * (x + 1.0);
        weights[n - 1 - k] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

/// A stream of weighted sample points in C^n: fills z and the quadrature
/// weight for a flat index.
struct SamplePlan {
    std::size_t n = 1;
    std::size_t total = 0;
    std::function<void(std::size_t, std::vector<Complex>&, double&)> at;
};

namespace detail {

struct PolarAxis {
    std::vector<double> r, rw;   // radial nodes and weights (including r dr factor)
    std::vector<double> theta;
    double theta_weight = 0.0;
    std::size_t count() const { return r.size() * theta.size(); }
};

// radius nodes r = R t^2 cluster toward the origin, where the tau-kernels peak
inline PolarAxis polar_axis(double radius, std::size_t n_r, std::size_t n_theta,
                            bool compactified) {
    PolarAxis ax;
    std::vector<double> t, w;
    gauss_legendre_01(n_r, t, w);
    for (std::size_t i = 0; i < n_r; ++i) {
        double r, dr;
        if (compactified) {
            // r = s/(1-s) with s = t^2 sweeps [0, inf)
            double s = t[i] * t[i];
            r = s / (1.0 - s);
            dr = 2.0 * t[i] / ((1.0 - s) * (1.0 - s));
        } else {
            r = radius * t[i] * t[i];
            dr = 2.0 * radius * t[i];
        }
        ax.r.push_back(r);
        ax.rw.push_back(w[i] * r * dr);
    }
    ax.theta.resize(n_theta);
    for (std::size_t j = 0; j < n_theta; ++j)
        ax.theta[j] = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) /
                      static_cast<double>(n_theta);
    ax.theta_weight = 2.0 * std::numbers::pi / static_cast<double>(n_theta);
    return ax;
}

// radial resolution matters more than angular here: the kernels concentrate
// radially while their angular harmonics stay low-degree
inline void grid_sizes(std::size_t n, std::size_t samples, std::size_t& n_r,
                       std::size_t& n_theta) {
    double per_axis = std::pow(static_cast<double>(samples), 1.0 / static_cast<double>(n));
    n_theta = std::min<std::size_t>(
        32, std::max<std::size_t>(8, static_cast<std::size_t>(std::pow(per_axis, 0.4))));
    n_r = std::min<std::size_t>(512,
                                std::max<std::size_t>(8, static_cast<std::size_t>(per_axis) /
                                                             n_theta));
}

} // namespace detail

/// Tensor polar grid over the polydisc {|z_j| <= R}.
inline SamplePlan polydisc_grid(std::size_t n, double radius, std::size_t samples) {
    std::size_t n_r, n_theta;
    detail::grid_sizes(n, samples, n_r, n_theta);
    auto axis = std::make_shared<detail::PolarAxis>(
        detail::polar_axis(radius, n_r, n_theta, false));
    SamplePlan plan;
    plan.n = n;
    std::size_t per_axis = axis->count();
    plan.total = 1;
    for (std::size_t j = 0; j < n; ++j) plan.total *= per_axis;
    plan.at = [n, axis, per_axis](std::size_t idx, std::vector<Complex>& z, double& w) {
        w = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t a = idx % per_axis;
            idx /= per_axis;
            std::size_t ir = a % axis->r.size();
            std::size_t it = a / axis->r.size();
            z[j] = std::polar(axis->r[ir], axis->theta[it]);
            w *= axis->rw[ir] * axis->theta_weight;
        }
    };
    return plan;
}

/// Monte Carlo over the polydisc with a radial importance profile: per
/// coordinate, |z|^2/R^2 = v^3 for uniform v, which stacks samples near the
/// origin where the tau-kernels concentrate. Weights restore the Lebesgue
/// measure, so the estimator is unbiased for any integrand.
inline SamplePlan polydisc_mc(std::size_t n, double radius, std::size_t samples,
                              std::uint64_t seed) {
    constexpr double kappa = 3.0;
    SamplePlan plan;
    plan.n = n;
    plan.total = samples;
    double disc_area = std::numbers::pi * radius * radius;
    double w0 = 1.0 / static_cast<double>(samples);
    plan.at = [n, radius, seed, w0, disc_area](std::size_t idx, std::vector<Complex>& z,
                                               double& w) {
        SampleRng rng(seed, idx);
        w = w0;
        for (std::size_t j = 0; j < n; ++j) {
            double v = rng.next_double();
            double t = std::pow(v, kappa); // |z|^2 / R^2
            double th = 2.0 * std::numbers::pi * rng.next_double();
            z[j] = std::polar(radius * std::sqrt(t), th);
            // density of t is (1/kappa) t^(1/kappa - 1)
            w *= disc_area * kappa * std::pow(t, 1.0 - 1.0 / kappa);
        }
    };
    return plan;
}

/// Tensor polar grid compactified over all of C^n (r = s/(1-s) per axis).
inline SamplePlan chart_grid(std::size_t n, std::size_t samples) {
    std::size_t n_r, n_theta;
    detail::grid_sizes(n, samples, n_r, n_theta);
    auto axis = std::make_shared<detail::PolarAxis>(detail::polar_axis(1.0, n_r, n_theta, true));
    SamplePlan plan;
    plan.n = n;
    std::size_t per_axis = axis->count();
    plan.total = 1;
    for (std::size_t j = 0; j < n; ++j) plan.total *= per_axis;
    plan.at = [n, axis, per_axis](std::size_t idx, std::vector<Complex>& z, double& w) {
        w = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t a = idx % per_axis;
            idx /= per_axis;
            std::size_t ir = a % axis->r.size();
            std::size_t it = a / axis->r.size();
            z[j] = std::polar(axis->r[ir], axis->theta[it]);
            w *= axis->rw[ir] * axis->theta_weight;
        }
    };
    return plan;
}

/// Fubini-Study samples on P^n as unit vectors in C^(n+1): normalized complex
/// Gaussians, deterministic per (seed, index).
struct FsSample {
    std::vector<Complex> x; // n+1 homogeneous coordinates, unit norm
    double weight = 0.0;
};

inline FsSample fubini_study_point(std::size_t n, std::uint64_t seed, std::size_t index,
                                   std::size_t count) {
    SampleRng rng(seed, index);
    FsSample s;
    s.x.resize(n + 1);
    double norm2 = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        // Box-Muller pairs
        double u1 = rng.next_double(), u2 = rng.next_double();
        u1 = std::max(u1, 1e-300);
        double m = std::sqrt(-2.0 * std::log(u1));
        Complex g(m * std::cos(2.0 * std::numbers::pi * u2),
                  m * std::sin(2.0 * std::numbers::pi * u2));
        s.x[j] = g;
        norm2 += std::norm(g);
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : s.x) c *= inv;
    s.weight = 1.0 / static_cast<double>(count);
    return s;
}

inline std::vector<FsSample> fubini_study_sample(std::size_t n, std::size_t count,
                                                 std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("count must be positive");
    std::vector<FsSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(fubini_study_point(n, seed, i, count));
    return out;
}

/// Extrapolation model: the default basis is {1, t log t, t}; the mass-type
/// estimates also carry a sqrt(t) term (bump tails and non-complete
/// intersection weights approach their limits at fractional rates).
enum class LadderModel { TauLog, TauLogSqrt };

namespace detail {

inline std::vector<double> model_row(LadderModel model, double t) {
    if (model == LadderModel::TauLog) return {1.0, t * std::log(t), t};
    return {1.0, std::sqrt(t), t * std::log(t), t};
}

inline std::size_t model_size(LadderModel model) {
    return model == LadderModel::TauLog ? 3 : 4;
}

// least squares over the first k points; returns coefficients, or empty on a
// degenerate normal matrix
inline std::vector<Complex> lsq_fit(LadderModel model, const std::vector<double>& taus,
                                    const std::vector<Complex>& values, std::size_t k) {
    const std::size_t nb = model_size(model);
    if (k < nb) return {};
    std::vector<std::vector<double>> g(nb, std::vector<double>(nb, 0.0));
    std::vector<Complex> rhs(nb, Complex(0.0));
    for (std::size_t i = 0; i < k; ++i) {
        auto row = model_row(model, taus[i]);
        for (std::size_t r = 0; r < nb; ++r) {
            for (std::size_t c = 0; c < nb; ++c) g[r][c] += row[r] * row[c];
            rhs[r] += row[r] * values[i];
        }
    }
    // Gaussian elimination with partial pivoting, re/im together
    std::vector<std::vector<Complex>> m(nb, std::vector<Complex>(nb + 1));
    for (std::size_t r = 0; r < nb; ++r) {
        for (std::size_t c = 0; c < nb; ++c) m[r][c] = g[r][c];
        m[r][nb] = rhs[r];
    }
    for (std::size_t col = 0; col < nb; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < nb; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-14) return {};
        std::swap(m[col], m[piv]);
        for (std::size_t r = col + 1; r < nb; ++r) {
            Complex f = m[r][col] / m[col][col];
            for (std::size_t c = col; c <= nb; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::vector<Complex> x(nb);
    for (std::size_t r = nb; r-- > 0;) {
        Complex s = m[r][nb];
        for (std::size_t c = r + 1; c < nb; ++c) s -= m[r][c] * x[c];
        x[r] = s / m[r][r];
    }
    return x;
}

} // namespace detail

/// Least-squares ladder extrapolation; the fitted constant term is the
/// tau -> 0 value. error_bar = max(fit residual, last-two-extrapolant gap).
inline Estimate extrapolate(const std::vector<double>& taus, const std::vector<Complex>& values,
                            double tolerance, LadderModel model = LadderModel::TauLog) {
    if (taus.size() != values.size() || taus.size() < 3)
        throw std::invalid_argument("need >= 3 ladder points");
    if (taus.size() < detail::model_size(model) + 1) model = LadderModel::TauLog;
    const std::size_t nb = detail::model_size(model);

    Estimate est;
    est.ladder_values = values;

    auto coef_full = detail::lsq_fit(model, taus, values, taus.size());
    if (coef_full.empty()) {
        est.value = values.back();
        est.degenerate_fit = true;
        est.error_bar = std::abs(values.back() - values[values.size() - 2]);
        return est;
    }
    est.value = coef_full[0];

    double resid = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        auto row = detail::model_row(model, taus[i]);
        Complex modeled = 0.0;
        for (std::size_t b = 0; b < row.size(); ++b) modeled += row[b] * coef_full[b];
        resid = std::max(resid, std::abs(modeled - values[i]));
    }

    double gap = 0.0;
    bool consecutive_ok = true;
    if (taus.size() > nb) {
        std::vector<Complex> prefix; // extrapolants from the first k rungs
        for (std::size_t k = nb; k <= taus.size(); ++k) {
            auto c = detail::lsq_fit(model, taus, values, k);
            if (c.empty()) {
                consecutive_ok = false;
                break;
            }
            prefix.push_back(c[0]);
        }
        for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
            if (std::abs(prefix[i + 1] - prefix[i]) > tolerance) consecutive_ok = false;
        if (prefix.size() >= 2) gap = std::abs(prefix.back() - prefix[prefix.size() - 2]);
    } else {
        consecutive_ok = resid <= tolerance;
    }
    est.error_bar = std::max(resid, gap);
    est.converged = consecutive_ok;
    return est;
}

} // namespace residuum
