#pragma once

#include <optional>

#include "residuum/bm.hpp"
#include "residuum/ideal.hpp"
#include "residuum/sections.hpp"

namespace residuum {

struct ProjectiveCycleProblem {
    PolySystem p;       // homogeneous polynomials in n+1 variables
    std::size_t codim = 1;
    std::uint64_t seed = 1;
};

struct DegreeEstimate {
    double value = 0.0;
    double error_bar = 0.0;
    std::vector<Complex> ladder_values;
    bool converged = false;
    std::optional<long> snapped; // nearest integer when within 3 error bars
    std::size_t chart = 0;
    Weights weights_used;
    std::optional<GenericSections> sections_used;
};

namespace detail {

/// Exact dyadic rescale to unit coefficient size. Degree and multiplicity
/// masses are invariant under scaling the defining polynomials, while the
/// tau-concentration scale is not: normalizing keeps the ladder resolvable.
inline Polynomial normalize_unit_scale(const Polynomial& p) {
    if (p.is_zero()) return p;
    double max_abs2 = 0.0;
    for (const auto& [e, c] : p.terms()) max_abs2 = std::max(max_abs2, c.norm().get_d());
    int k = static_cast<int>(std::lround(0.5 * std::log2(max_abs2)));
    if (k == 0) return p;
    mpq_class scale(1);
    if (k > 0)
        scale = mpq_class(1, 1) / mpq_class(mpz_class(1) << k);
    else
        scale = mpq_class(mpz_class(1) << (-k));
    return p.scaled(GaussianRational(scale));
}

/// Fubini-Study form at a chart point as a Form: omega = (i/2pi) sum_ij
/// [delta_ij/(1+u) - conj(z_i) z_j/(1+u)^2] dz_i ^ dzbar_j.
inline Form fubini_study_form(const std::vector<Complex>& z) {
    const std::size_t n = z.size();
    double u = 0.0;
    for (const auto& c : z) u += std::norm(c);
    Form w(n);
    Complex pref = Complex(0.0, 1.0) / (2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex cij = (i == j ? Complex(1.0 / (1.0 + u)) : Complex(0.0)) -
                          std::conj(z[i]) * z[j] / ((1.0 + u) * (1.0 + u));
            w += Form::basis_element(n, static_cast<std::uint16_t>(1u << i),
                                     static_cast<std::uint16_t>(1u << j), pref * cij);
        }
    }
    return w;
}

inline Form fubini_study_power(const std::vector<Complex>& z, std::size_t k) {
    const std::size_t n = z.size();
    if (k == 0) return Form::scalar(n, 1.0);
    Form w = fubini_study_form(z);
    Form acc = w;
    for (std::size_t i = 1; i < k; ++i) acc = wedge(acc, w);
    return acc;
}

/// Chart plan covering P^n minus a hyperplane; Monte Carlo draws
/// Fubini-Study points and reweights to Lebesgue measure on the chart.
inline SamplePlan projective_plan(std::size_t n, std::size_t chart,
                                  const QuadratureConfig& quad) {
    if (quad.scheme == Scheme::TensorGrid) return chart_grid(n, quad.samples);
    SamplePlan plan;
    plan.n = n;
    plan.total = quad.samples;
    double fs_to_lebesgue = factorial(n);
    for (std::size_t j = 0; j < n; ++j) fs_to_lebesgue /= std::numbers::pi;
    std::uint64_t seed = quad.seed;
    std::size_t total = quad.samples;
    plan.at = [n, chart, seed, total, fs_to_lebesgue](std::size_t idx, std::vector<Complex>& z,
                                                      double& w) {
        FsSample s = fubini_study_point(n, seed, idx, total);
        double xc2 = std::norm(s.x[chart]);
        if (xc2 < 1e-12) { // vanishing sliver of the chart, weight it out
            w = 0.0;
            for (std::size_t i = 0; i < n; ++i) z[i] = 0.0;
            return;
        }
        std::size_t k = 0;
        double u = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == chart) continue;
            z[k] = s.x[i] / s.x[chart];
            u += std::norm(z[k]);
            ++k;
        }
        // FS volume has density (n!/pi^n) (1+u)^-(n+1) against Lebesgue
        w = s.weight * std::pow(1.0 + u, static_cast<double>(n + 1)) / fs_to_lebesgue;
    };
    return plan;
}

inline std::optional<long> snap_to_integer(double value, double error_bar) {
    double nearest = std::round(value);
    if (std::abs(value - nearest) <= 3.0 * std::max(error_bar, 1e-12))
        return static_cast<long>(nearest);
    return std::nullopt;
}

} // namespace detail

/// Ladder of the Theorem 3.1 style current mass against omega^(n-r), in a
/// fixed affine chart. The Q system comes affinized; rho carries the
/// ||x||-power normalizations as (1+|z|^2) powers.
inline std::vector<Complex> projective_mass_ladder(const PolySystem& q_affine, const Weights& w,
                                                   std::size_t r, std::size_t omega_power,
                                                   const std::vector<double>& taus,
                                                   std::size_t chart,
                                                   const QuadratureConfig& quad) {
    WeightedSystemEval sys(q_affine, w);
    SamplePlan plan = detail::projective_plan(q_affine.nvars, chart, quad);
    return detail::positive_action_ladder(
        sys, r, plan, taus, quad.threads,
        [omega_power](const std::vector<Complex>& z) {
            return detail::fubini_study_power(z, omega_power);
        });
}

/// Degree of the divisor of a homogeneous P via the tau-smoothed zeta
/// representation with F = |P|^2 / ||x||^(2 deg P); multiplicities count
/// (P = S^k contributes k deg S).
inline DegreeEstimate hypersurface_degree_numeric(const Polynomial& p_homog,
                                                  const QuadratureConfig& quad,
                                                  std::size_t chart = 0) {
    quad.validate();
    if (p_homog.is_zero()) throw std::invalid_argument("zero polynomial");
    if (!p_homog.is_homogeneous()) throw std::invalid_argument("polynomial not homogeneous");
    const std::size_t n = p_homog.nvars() - 1;
    if (n < 1 || n > 3) throw std::invalid_argument("projective dimension out of range");

    Weights w;
    w.q = {0};
    w.rho = {RhoSpec::affine_power(p_homog.degree())};
    PolySystem q_affine(n, {detail::normalize_unit_scale(p_homog.dehomogenize(chart))});

    auto ladder = projective_mass_ladder(q_affine, w, 1, n - 1, quad.tau_ladder, chart, quad);
    Estimate est = extrapolate(quad.tau_ladder, ladder, quad.target_tolerance,
                               LadderModel::TauLogSqrt);

    DegreeEstimate out;
    out.value = est.value.real();
    out.error_bar = std::max(est.error_bar, std::abs(est.value.imag()));
    out.ladder_values = std::move(est.ladder_values);
    out.converged = est.converged;
    out.chart = chart;
    out.weights_used = w;
    out.snapped = detail::snap_to_integer(out.value, out.error_bar);
    return out;
}

namespace detail {

/// Exact chart check for zero-dimensional cycles: the chart hyperplane misses
/// the support iff (P, x_chart) has empty projective zero set, i.e. some power
/// of every variable lies in the ideal.
inline bool chart_misses_support(const PolySystem& p, std::size_t chart, std::size_t cap) {
    std::vector<Polynomial> gens = p.polys;
    gens.push_back(Polynomial::variable(p.nvars, chart));
    PolySystem ext(p.nvars, std::move(gens));
    GroebnerBasis gb(ext, MonomialOrder::grevlex(p.nvars));
    for (std::size_t v = 0; v < p.nvars; ++v)
        if (!power_in_ideal(v, gb, cap)) return false;
    return true;
}

inline PolySystem affinize(const PolySystem& p, std::size_t chart) {
    std::vector<Polynomial> out;
    out.reserve(p.size());
    for (const auto& q : p.polys) out.push_back(q.dehomogenize(chart));
    return PolySystem(p.nvars - 1, std::move(out));
}

} // namespace detail

/// Degree of a purely dimensional cycle via Theorem 3.1's weighted sections,
/// for the desk-scale cases d = 1 and d = n. Sections are re-sampled with an
/// incremented seed when they come out degenerate.
inline DegreeEstimate cycle_degree_numeric(const ProjectiveCycleProblem& prob,
                                           const QuadratureConfig& quad) {
    quad.validate();
    const std::size_t nv = prob.p.nvars;         // n+1 homogeneous coordinates
    const std::size_t n = nv - 1;
    const std::size_t d = prob.codim;
    const std::size_t m = prob.p.size();
    if (d != 1 && d != n) throw std::invalid_argument("only d = 1 and d = n are supported");
    if (n < 1 || n > 3) throw std::invalid_argument("projective dimension out of range");

    // degrees sorted descending, as the construction assumes
    std::vector<Polynomial> sorted = prob.p.polys;
    std::sort(sorted.begin(), sorted.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.degree() > b.degree();
    });
    PolySystem p_sorted(nv, std::move(sorted));
    const std::uint32_t d1 = p_sorted[0].degree();

    // N exactly at d D1^d + 1, safely above the theorem's bound
    std::size_t big_n = 1;
    for (std::size_t k = 0; k < d; ++k) big_n *= d1;
    big_n = d * big_n + 1;

    std::size_t chart = 0;
    if (d == n) {
        std::size_t cap = default_power_cap(p_sorted) + big_n;
        bool found = false;
        for (std::size_t c = 0; c < nv && !found; ++c) {
            if (detail::chart_misses_support(p_sorted, c, cap)) {
                chart = c;
                found = true;
            }
        }
        if (!found) throw std::invalid_argument("no coordinate chart misses the cycle support");
    }

    std::uint64_t seed = prob.seed;
    for (int attempt = 0; attempt < 5; ++attempt, ++seed) {
        GenericSections sec = generic_sections(p_sorted, d, seed);

        std::vector<Polynomial> q_all = sec.q.polys;
        for (const auto& pk : p_sorted.polys)
            q_all.push_back(detail::normalize_unit_scale(pk));
        PolySystem q_proj(nv, std::move(q_all));

        Weights w;
        for (std::size_t j = 0; j < d; ++j) {
            w.q.push_back(0);
            w.rho.push_back(RhoSpec::affine_power(d1));
        }
        for (std::size_t k = 0; k < m; ++k) {
            w.q.push_back(static_cast<unsigned>(big_n));
            w.rho.push_back(RhoSpec::affine_power(
                mpq_class(static_cast<long>((big_n + 1) * p_sorted[k].degree()))));
        }

        PolySystem q_affine = detail::affinize(q_proj, chart);

        if (d == n) {
            // wrong-codimension sections have an infinite-colength chart ideal
            PolySystem sections_affine(n, std::vector<Polynomial>(q_affine.polys.begin(),
                                                                  q_affine.polys.begin() + d));
            if (!quotient_dimension(sections_affine)) continue;
        }

        auto ladder =
            projective_mass_ladder(q_affine, w, d, n - d, quad.tau_ladder, chart, quad);
        Estimate est = extrapolate(quad.tau_ladder, ladder, quad.target_tolerance,
                                   LadderModel::TauLogSqrt);

        DegreeEstimate out;
        out.value = est.value.real();
        out.error_bar = std::max(est.error_bar, std::abs(est.value.imag()));
        out.ladder_values = std::move(est.ladder_values);
        out.converged = est.converged;
        out.chart = chart;
        out.weights_used = w;
        out.sections_used = std::move(sec);
        out.snapped = detail::snap_to_integer(out.value, out.error_bar);
        return out;
    }
    throw std::runtime_error("generic sections stayed degenerate after re-sampling");
}

/// Local multiplicity at the origin of an m-primary affine germ system, as
/// the mass of the weighted positive current near 0: q = 0 on d = n generic
/// section combinations, q = N on the originals (rho = 1 throughout).
inline Estimate point_multiplicity_numeric(const PolySystem& f, const QuadratureConfig& quad,
                                           std::uint64_t seed = 1) {
    quad.validate();
    const std::size_t n = f.nvars;
    const std::size_t m = f.size();
    if (n < 1 || n > 3) throw std::invalid_argument("dimension out of range");
    if (m < n) throw std::invalid_argument("need at least n generators for an isolated zero");

    // the zero set must be finite (a positive-dimensional component cannot
    // leave the ball), and the polydisc boundary must stay clear of it
    if (!quotient_dimension(f))
        throw std::domain_error("zero set is not isolated at the origin");
    {
        double minimum = 1e300;
        std::vector<Complex> z(n);
        for (std::size_t i = 0; i < 512; ++i) {
            SampleRng rng(seed ^ 0x5110'0dULL, i);
            double peak = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double r = quad.radius * std::sqrt(rng.next_double());
                z[j] = std::polar(r, 2.0 * std::numbers::pi * rng.next_double());
                peak = std::max(peak, std::abs(z[j]));
            }
            double rescale = quad.radius * (0.9 + 0.1 * rng.next_double()) / peak;
            for (auto& c : z) c *= rescale;
            double s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += std::norm(f[j].eval(z));
            minimum = std::min(minimum, s);
        }
        if (minimum < 1e-8)
            throw std::domain_error("zero set appears to meet the integration shell");
    }

    std::vector<Polynomial> scaled;
    scaled.reserve(m);
    for (const auto& fk : f.polys) scaled.push_back(detail::normalize_unit_scale(fk));
    PolySystem fs(n, std::move(scaled));

    const std::uint32_t d1 = [&] {
        std::uint32_t d = 1;
        for (const auto& p : fs.polys) d = std::max(d, p.degree());
        return d;
    }();
    std::size_t big_n = 1;
    for (std::size_t k = 0; k < n; ++k) big_n *= d1;
    big_n = n * big_n + 1;

    for (int attempt = 0; attempt < 5; ++attempt, ++seed) {
        // generic section combinations g_j = sum_k beta_jk f_k, rows
        // normalized to unit max coefficient
        std::vector<Polynomial> gs;
        for (std::size_t j = 0; j < n; ++j) {
            SampleRng rng(seed, 7'000 + j);
            std::vector<long> beta(m);
            long maxb = 1;
            for (std::size_t k = 0; k < m; ++k) {
                long b = 0;
                while (b == 0) b = rng.next_int(-kGenericCoeffBound, kGenericCoeffBound);
                beta[k] = b;
                maxb = std::max(maxb, std::abs(b));
            }
            Polynomial g(n);
            for (std::size_t k = 0; k < m; ++k)
                g += fs[k].scaled(GaussianRational(beta[k], maxb));
            gs.push_back(std::move(g));
        }
        PolySystem sections(n, gs);
        if (!quotient_dimension(sections)) continue; // degenerate draw

        std::vector<Polynomial> q_all = std::move(gs);
        for (const auto& fk : fs.polys) q_all.push_back(fk);
        PolySystem q_sys(n, std::move(q_all));
        Weights w;
        for (std::size_t j = 0; j < n; ++j) {
            w.q.push_back(0);
            w.rho.push_back(RhoSpec::one());
        }
        for (std::size_t k = 0; k < m; ++k) {
            w.q.push_back(static_cast<unsigned>(big_n));
            w.rho.push_back(RhoSpec::one());
        }

        TestForm bump = TestForm::plateau_bump(n, quad.radius);
        WeightedSystemEval sys(q_sys, w);
        SamplePlan plan = quad.scheme == Scheme::TensorGrid
                              ? polydisc_grid(n, quad.radius, quad.samples)
                              : polydisc_mc(n, quad.radius, quad.samples, quad.seed);
        auto ladder = detail::positive_action_ladder(
            sys, n, plan, quad.tau_ladder, quad.threads,
            [&bump](const std::vector<Complex>& z) { return bump.at(z); });
        return extrapolate(quad.tau_ladder, ladder, quad.target_tolerance,
                           LadderModel::TauLogSqrt);
    }
    throw std::runtime_error("generic sections stayed degenerate after re-sampling");
}

} // namespace residuum
