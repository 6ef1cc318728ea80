#pragma once

#include <array>
#include <numbers>

#include "residuum/forms.hpp"
#include "residuum/polynomial.hpp"
#include "residuum/quadrature.hpp"
#include "residuum/weights.hpp"

namespace residuum {

namespace detail {

/// Polynomial flattened for tight evaluation loops.
struct CompiledPoly {
    struct Term {
        Complex c;
        std::array<std::uint8_t, 8> e{};
    };
    std::size_t nv = 0;
    std::vector<Term> terms;

    static CompiledPoly compile(const Polynomial& p) {
        CompiledPoly out;
        out.nv = p.nvars();
        if (out.nv > 8) throw std::invalid_argument("too many variables for numeric path");
        for (const auto& [e, c] : p.terms()) {
            Term t;
            t.c = c.to_complex();
            for (std::size_t i = 0; i < out.nv; ++i) {
                if (e[i] > 255) throw std::invalid_argument("degree too large for numeric path");
                t.e[i] = static_cast<std::uint8_t>(e[i]);
            }
            out.terms.push_back(t);
        }
        return out;
    }

    Complex eval(const std::vector<Complex>& z) const {
        Complex acc = 0.0;
        for (const auto& t : terms) {
            Complex v = t.c;
            for (std::size_t i = 0; i < nv; ++i) {
                Complex b = z[i];
                for (std::uint8_t k = 0; k < t.e[i]; ++k) v *= b;
            }
            acc += v;
        }
        return acc;
    }
};

inline Complex det_small(const std::vector<std::vector<Complex>>& m) {
    switch (m.size()) {
        case 1:
            return m[0][0];
        case 2:
            return m[0][0] * m[1][1] - m[0][1] * m[1][0];
        case 3:
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        default:
            throw std::invalid_argument("determinant size out of range");
    }
}

} // namespace detail

/// ||f||^2_{q,rho} = sum rho_k^2 |f_k|^(2(q_k+1)) at a point.
inline double weighted_norm_sq(const PolySystem& f, const Weights& w,
                               const std::vector<Complex>& point) {
    w.validate(f.size());
    if (point.size() != f.nvars) throw std::invalid_argument("point dimension mismatch");
    double u = 0.0;
    for (const auto& z : point) u += std::norm(z);
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        double a = std::norm(f[j].eval(point));
        RhoAt r = rho_at(w.rho[j], u);
        s += stable_weight(r, a, w.q[j]) * a;
    }
    return s;
}

/// Pointwise data for the weighted system: values, derivatives and the
/// covectors the tau-kernels are assembled from.
class WeightedSystemEval {
  public:
    WeightedSystemEval(const PolySystem& f, Weights w) : m_(f.size()), n_(f.nvars), w_(std::move(w)) {
        w_.validate(m_);
        for (std::size_t j = 0; j < m_; ++j) {
            fs_.push_back(detail::CompiledPoly::compile(f[j]));
            std::vector<detail::CompiledPoly> row;
            for (std::size_t i = 0; i < n_; ++i)
                row.push_back(detail::CompiledPoly::compile(f[j].partial(i)));
            dfs_.push_back(std::move(row));
        }
    }

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    const Weights& weights() const { return w_; }

    struct PointData {
        double u = 0.0;                        // |z|^2
        double S = 0.0;                        // ||f||^2_{q,rho}
        std::vector<Complex> fv;               // f_j
        std::vector<double> a;                 // |f_j|^2
        std::vector<RhoAt> rho;
        std::vector<double> wgt;               // rho_j^2 a_j^(q_j), log-stable
        std::vector<std::vector<Complex>> df;  // df[j][i]
    };

    void eval(const std::vector<Complex>& z, PointData& pd) const {
        pd.u = 0.0;
        for (const auto& c : z) pd.u += std::norm(c);
        pd.fv.resize(m_);
        pd.a.resize(m_);
        pd.rho.resize(m_);
        pd.wgt.resize(m_);
        pd.df.assign(m_, std::vector<Complex>(n_));
        pd.S = 0.0;
        for (std::size_t j = 0; j < m_; ++j) {
            pd.fv[j] = fs_[j].eval(z);
            pd.a[j] = std::norm(pd.fv[j]);
            pd.rho[j] = rho_at(w_.rho[j], pd.u);
            pd.wgt[j] = stable_weight(pd.rho[j], pd.a[j], w_.q[j]);
            pd.S += pd.wgt[j] * pd.a[j];
            for (std::size_t i = 0; i < n_; ++i) pd.df[j][i] = dfs_[j][i].eval(z);
        }
    }

    /// Components over dzbar_i of dbar(rho_j^2 fbar_j |f_j|^(2 q_j)).
    std::vector<Complex> dbar_s(std::size_t j, const PointData& pd,
                                const std::vector<Complex>& z) const {
        std::vector<Complex> v(n_);
        double qp1 = static_cast<double>(w_.q[j] + 1);
        Complex fbar = std::conj(pd.fv[j]);
        for (std::size_t i = 0; i < n_; ++i) {
            Complex t = qp1 * std::conj(pd.df[j][i]);
            if (pd.rho[j].dlog != 0.0) t += fbar * pd.rho[j].dlog * z[i];
            v[i] = pd.wgt[j] * t;
        }
        return v;
    }

    /// Components over dzbar_i of dbar ||f||^2 (the dz components are the
    /// conjugates since the norm is real).
    std::vector<Complex> dbar_norm(const PointData& pd, const std::vector<Complex>& z) const {
        std::vector<Complex> v(n_, Complex(0.0));
        for (std::size_t j = 0; j < m_; ++j) {
            double qp1 = static_cast<double>(w_.q[j] + 1);
            for (std::size_t i = 0; i < n_; ++i) {
                Complex t = qp1 * pd.fv[j] * std::conj(pd.df[j][i]);
                if (pd.rho[j].dlog != 0.0) t += pd.a[j] * pd.rho[j].dlog * z[i];
                v[i] += pd.wgt[j] * t;
            }
        }
        return v;
    }

    /// Components over dzbar_i of dbar(rho_j fbar_j^(q_j+1)).
    std::vector<Complex> dbar_b(std::size_t j, const PointData& pd,
                                const std::vector<Complex>& z) const {
        std::vector<Complex> v(n_);
        Complex vj = stable_phase_weight(pd.rho[j], pd.fv[j], pd.a[j], w_.q[j]);
        double qp1 = static_cast<double>(w_.q[j] + 1);
        Complex fbar = std::conj(pd.fv[j]);
        for (std::size_t i = 0; i < n_; ++i) {
            Complex t = qp1 * std::conj(pd.df[j][i]);
            if (pd.rho[j].dlog_half != 0.0) t += fbar * pd.rho[j].dlog_half * z[i];
            v[i] = vj * t;
        }
        return v;
    }

  private:
    std::size_t m_, n_;
    Weights w_;
    std::vector<detail::CompiledPoly> fs_;
    std::vector<std::vector<detail::CompiledPoly>> dfs_;
};

/// Test form data: sum of c_T(z, zbar) dz_A ^ dzbar_B terms carried by a
/// smooth bump of the given support radius (radius <= 0 disables the cutoff).
/// Coefficient polynomials live in 2n variables, evaluated at (z, conj z).
struct TestForm {
    std::size_t n = 1;
    struct Term {
        std::uint16_t dz_mask = 0;
        std::uint16_t bar_mask = 0;
        Polynomial coeff;
    };
    std::vector<Term> terms;
    double support_radius = 1.0;
    bool plateau = false; // flat-top cutoff variant for mass estimates

    static std::uint16_t full_mask(std::size_t n) {
        return static_cast<std::uint16_t>((1u << n) - 1u);
    }

    /// Plain bump function (0,0)-form.
    static TestForm bump(std::size_t n, double radius) {
        TestForm t;
        t.n = n;
        t.support_radius = radius;
        t.terms.push_back({0, 0, Polynomial::constant(2 * n, GaussianRational(1))});
        return t;
    }

    /// Flat-top cutoff, identically 1 near the origin.
    static TestForm plateau_bump(std::size_t n, double radius) {
        TestForm t = bump(n, radius);
        t.plateau = true;
        return t;
    }

    /// c(z, zbar) * chi * dz_1..dz_n ^ dzbar_B — the (n, .) shapes paired with
    /// Lemma 1.1 currents. coeff has 2n variables (z first, then zbar).
    static TestForm against_volume(std::size_t n, std::uint16_t bar_mask,
                                   const Polynomial& coeff, double radius) {
        if (coeff.nvars() != 2 * n) throw std::invalid_argument("coefficient must have 2n vars");
        TestForm t;
        t.n = n;
        t.support_radius = radius;
        t.terms.push_back({full_mask(n), bar_mask, coeff});
        return t;
    }

    /// Numerator h(z) * chi * dz_1..dz_n with h in n variables.
    static TestForm holomorphic_volume(std::size_t n, const Polynomial& h, double radius) {
        std::vector<std::size_t> lift(n);
        for (std::size_t i = 0; i < n; ++i) lift[i] = i;
        return against_volume(n, 0, h.remap(lift, 2 * n), radius);
    }

    std::uint16_t expected_bar_degree(std::size_t r) const {
        return static_cast<std::uint16_t>(n - r);
    }

    Form at(const std::vector<Complex>& z) const {
        double chi = 1.0;
        if (support_radius > 0.0) {
            double u = 0.0;
            for (const auto& c : z) u += std::norm(c);
            chi = plateau ? bump_chi_plateau(u / (support_radius * support_radius))
                          : bump_chi(u / (support_radius * support_radius));
            if (chi == 0.0) return Form(n);
        }
        std::vector<Complex> zz(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            zz[i] = z[i];
            zz[n + i] = std::conj(z[i]);
        }
        Form out(n);
        for (const auto& t : terms) {
            Complex c = t.coeff.eval(zz) * chi;
            out += Form::basis_element(n, t.dz_mask, t.bar_mask, c);
        }
        return out;
    }
};

namespace detail {

inline Complex pow_2pii(std::size_t r) {
    Complex c = 1.0;
    for (std::size_t k = 0; k < r; ++k) c *= Complex(0.0, 2.0 * std::numbers::pi);
    return c;
}

inline double factorial(std::size_t k) {
    double f = 1.0;
    for (std::size_t j = 2; j <= k; ++j) f *= static_cast<double>(j);
    return f;
}

/// gamma_r = (-1)^(r(r-1)/2) (r-1)! / (2 pi i)^r, the paper's residue constant.
inline Complex gamma_const(std::size_t r) {
    Complex c = factorial(r - 1) / pow_2pii(r);
    if ((r * (r - 1) / 2) & 1) c = -c;
    return c;
}

inline SamplePlan make_polydisc_plan(std::size_t n, const QuadratureConfig& quad) {
    return quad.scheme == Scheme::TensorGrid
               ? polydisc_grid(n, quad.radius, quad.samples)
               : polydisc_mc(n, quad.radius, quad.samples, quad.seed);
}

/// Shared ladder driver: per-point numerator and S feed rung values
/// tau * num / denom(S, tau).
template <typename PointFn, typename DenomFn>
std::vector<Complex> ladder_integrate(const SamplePlan& plan, const std::vector<double>& taus,
                                      unsigned threads, PointFn&& point_fn, DenomFn&& denom) {
    const std::size_t width = taus.size();
    auto sums = parallel_block_sum(
        plan.total, width, threads,
        [&](std::size_t idx, std::vector<Complex>& acc) {
            thread_local std::vector<Complex> z;
            z.assign(plan.n, Complex(0.0));
            double wq = 0.0;
            plan.at(idx, z, wq);
            Complex num;
            double S;
            if (!point_fn(z, num, S)) return;
            if (num == 0.0) return;
            for (std::size_t k = 0; k < width; ++k)
                acc[k] += wq * taus[k] * num / denom(S, taus[k]);
        });
    return sums;
}

} // namespace detail

/// Smoothed Grothendieck residue at parameter tau: the absolutely convergent
/// volume integral
///   (n!/pi^n) tau Int  det[dbar s_k]_ki  h(z) / (||f||^2 + tau)^(n+1) dV
/// over the polydisc; the constant is pinned by the n=1, f=z, h=1 calibration
/// (value R^2/(R^2+tau) exactly).
inline std::vector<Complex> bm_residue_ladder(const PolySystem& f, const Polynomial& h,
                                              const Weights& w, const std::vector<double>& taus,
                                              const QuadratureConfig& quad) {
    if (f.size() != f.nvars) throw std::invalid_argument("square system required");
    const std::size_t n = f.nvars;
    if (n > 3) throw std::invalid_argument("numeric engine limited to n <= 3");
    WeightedSystemEval sys(f, w);
    detail::CompiledPoly hc = detail::CompiledPoly::compile(h);

    SamplePlan plan = detail::make_polydisc_plan(n, quad);
    double c = detail::factorial(n);
    for (std::size_t k = 0; k < n; ++k) c /= std::numbers::pi;

    auto sums = detail::ladder_integrate(
        plan, taus, quad.threads,
        [&](const std::vector<Complex>& z, Complex& num, double& S) {
            thread_local WeightedSystemEval::PointData pd;
            sys.eval(z, pd);
            S = pd.S;
            std::vector<std::vector<Complex>> rows(n);
            for (std::size_t k = 0; k < n; ++k) rows[k] = sys.dbar_s(k, pd, z);
            num = detail::det_small(rows) * hc.eval(z);
            return true;
        },
        [n](double S, double tau) {
            double d = S + tau;
            double p = d;
            for (std::size_t k = 0; k < n; ++k) p *= d;
            return p;
        });
    for (auto& v : sums) v *= c;
    return sums;
}

inline Complex bm_residue_smoothed(const PolySystem& f, const Polynomial& h, const Weights& w,
                                   double tau, const QuadratureConfig& quad) {
    if (tau <= 0.0) throw std::invalid_argument("tau must be positive");
    return bm_residue_ladder(f, h, w, {tau}, quad)[0];
}

/// Residue via the tau ladder with a + b tau log tau + c tau extrapolation.
inline Estimate bm_residue(const PolySystem& f, const Polynomial& h, const Weights& w,
                           const QuadratureConfig& quad) {
    quad.validate();
    auto ladder = bm_residue_ladder(f, h, w, quad.tau_ladder, quad);
    return extrapolate(quad.tau_ladder, ladder, quad.target_tolerance);
}

/// Weighted residue current action Res[phi / f_I; f]^{q,rho} by the smoothed
/// volume representation: constant r gamma_r, kernel
///   dbar||f||^2 ^ Omega(s; I) ^ phi / (||f||^2 (||f||^2 + tau)^(r+1)).
inline Estimate residue_current_action(const PolySystem& f, const std::vector<std::size_t>& I,
                                       const Weights& w, const TestForm& phi,
                                       const QuadratureConfig& quad) {
    quad.validate();
    const std::size_t n = f.nvars;
    const std::size_t r = I.size();
    if (r < 1 || r > std::min(f.size(), n)) throw std::invalid_argument("bad index subset");
    for (auto i : I)
        if (i >= f.size()) throw std::invalid_argument("index out of range");
    if (phi.n != n) throw std::invalid_argument("test form dimension mismatch");
    for (const auto& t : phi.terms)
        if (std::popcount(static_cast<unsigned>(t.bar_mask)) + r != n ||
            t.dz_mask != TestForm::full_mask(n))
            throw std::invalid_argument("test form bidegree mismatch");

    WeightedSystemEval sys(f, w);
    SamplePlan plan = detail::make_polydisc_plan(n, quad);
    Complex c = static_cast<double>(r) * detail::gamma_const(r);

    auto sums = detail::ladder_integrate(
        plan, quad.tau_ladder, quad.threads,
        [&](const std::vector<Complex>& z, Complex& num, double& S) {
            thread_local WeightedSystemEval::PointData pd;
            sys.eval(z, pd);
            S = pd.S;
            if (S < 1e-280) return false; // measure-zero singular set
            Form phi_z = phi.at(z);
            if (phi_z.is_zero()) return false;

            std::vector<std::vector<Complex>> ds(r);
            for (std::size_t l = 0; l < r; ++l) ds[l] = sys.dbar_s(I[l], pd, z);

            Form omega(n);
            for (std::size_t k = 0; k < r; ++k) {
                Complex s_k = pd.wgt[I[k]] * std::conj(pd.fv[I[k]]);
                if (s_k == 0.0) continue;
                Form wedge_rest = Form::scalar(n, ((k & 1) ? -1.0 : 1.0) * s_k);
                for (std::size_t l = 0; l < r; ++l) {
                    if (l == k) continue;
                    wedge_rest = wedge(wedge_rest, Form::covector_dzbar(n, ds[l]));
                }
                omega += wedge_rest;
            }
            Form kern = wedge(Form::covector_dzbar(n, sys.dbar_norm(pd, z)), omega);
            num = wedge(kern, phi_z).top_coefficient_vs_volume();
            return true;
        },
        [r](double S, double tau) {
            double d = S + tau;
            double p = S;
            for (std::size_t k = 0; k <= r; ++k) p *= d;
            return p;
        });
    std::vector<Complex> ladder(sums.size());
    for (std::size_t k = 0; k < sums.size(); ++k) ladder[k] = c * sums[k];
    return extrapolate(quad.tau_ladder, ladder, quad.target_tolerance,
                       LadderModel::TauLogSqrt);
}

namespace detail {

/// Ladder of Psi(tau) values for the closed positive current [f]_r^{q,rho}:
///   Psi(tau) = (r!/(2 pi i)^r) tau Int dbar||f||^2 ^ d||f||^2 ^
///              sum_{|J|=r-1} wedge_j (dbar b_j ^ d bbar_j) ^ phi
///              / (||f||^2 (||f||^2+tau)^(r+1)),   b_j = rho_j fbar_j^(q_j+1).
/// phi_at supplies the test form pointwise (polynomial data or an omega power).
template <typename PhiAt>
std::vector<Complex> positive_action_ladder(const WeightedSystemEval& sys, std::size_t r,
                                            const SamplePlan& plan,
                                            const std::vector<double>& taus, unsigned threads,
                                            PhiAt&& phi_at) {
    const std::size_t n = sys.n();
    const std::size_t m = sys.m();
    Complex c = factorial(r) / pow_2pii(r);

    std::vector<std::vector<std::size_t>> subsets; // r-1 out of {0..m-1}
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == r - 1) {
            subsets.push_back(cur);
            return;
        }
        for (std::size_t j = start; j < m; ++j) {
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);

    auto sums = ladder_integrate(
        plan, taus, threads,
        [&](const std::vector<Complex>& z, Complex& num, double& S) {
            thread_local WeightedSystemEval::PointData pd;
            sys.eval(z, pd);
            S = pd.S;
            if (S < 1e-280) return false;
            Form phi_z = phi_at(z);
            if (phi_z.is_zero()) return false;

            std::vector<Complex> dbn = sys.dbar_norm(pd, z);
            std::vector<Complex> dn(n);
            for (std::size_t i = 0; i < n; ++i) dn[i] = std::conj(dbn[i]);
            Form base = wedge(Form::covector_dzbar(n, dbn), Form::covector_dz(n, dn));
            if (base.is_zero()) return false;

            std::vector<Form> pair_forms;
            pair_forms.reserve(m);
            for (std::size_t j = 0; j < m; ++j) {
                std::vector<Complex> db = sys.dbar_b(j, pd, z);
                std::vector<Complex> dbc(n);
                for (std::size_t i = 0; i < n; ++i) dbc[i] = std::conj(db[i]);
                pair_forms.push_back(
                    wedge(Form::covector_dzbar(n, db), Form::covector_dz(n, dbc)));
            }
            Form total(n);
            for (const auto& sub : subsets) {
                Form t = Form::scalar(n, 1.0);
                for (std::size_t j : sub) t = wedge(t, pair_forms[j]);
                total += t;
            }
            num = wedge(wedge(base, total), phi_z).top_coefficient_vs_volume();
            return true;
        },
        [r](double S, double tau) {
            double d = S + tau;
            double p = S;
            for (std::size_t k = 0; k <= r; ++k) p *= d;
            return p;
        });
    for (auto& v : sums) v *= c;
    return sums;
}

} // namespace detail

/// Closed positive current [f]_r^{q,rho} acting on an (n-r, n-r) test form.
inline Estimate positive_current_action(const PolySystem& f, std::size_t r, const Weights& w,
                                        const TestForm& phi, const QuadratureConfig& quad) {
    quad.validate();
    const std::size_t n = f.nvars;
    if (r < 1 || r > std::min(f.size(), n)) throw std::invalid_argument("bad current index r");
    if (phi.n != n) throw std::invalid_argument("test form dimension mismatch");
    for (const auto& t : phi.terms)
        if (std::popcount(static_cast<unsigned>(t.dz_mask)) + r != n ||
            std::popcount(static_cast<unsigned>(t.bar_mask)) + r != n)
            throw std::invalid_argument("test form bidegree mismatch");

    WeightedSystemEval sys(f, w);
    SamplePlan plan = detail::make_polydisc_plan(n, quad);
    auto ladder = detail::positive_action_ladder(
        sys, r, plan, quad.tau_ladder, quad.threads,
        [&phi](const std::vector<Complex>& z) { return phi.at(z); });
    return extrapolate(quad.tau_ladder, ladder, quad.target_tolerance,
                       LadderModel::TauLogSqrt);
}

} // namespace residuum
