#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "residuum/rational.hpp"

namespace residuum {

using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

/// Sparse multivariate polynomial over Gaussian rationals.
/// Terms map exponent vectors (length nvars) to nonzero coefficients.
class Polynomial {
  public:
    using TermMap = std::map<Exponents, GaussianRational>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const GaussianRational& c) {
        Polynomial p(nvars);
        if (!c.is_zero()) p.terms_[Exponents(nvars, 0)] = c;
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t idx, std::uint32_t power = 1) {
        if (idx >= nvars) throw std::out_of_range("variable index");
        Polynomial p(nvars);
        if (power == 0) return constant(nvars, GaussianRational(1));
        Exponents e(nvars, 0);
        e[idx] = power;
        p.terms_[std::move(e)] = GaussianRational(1);
        return p;
    }
    static Polynomial monomial(std::size_t nvars, Exponents e, const GaussianRational& c) {
        if (e.size() != nvars) throw std::invalid_argument("exponent length mismatch");
        Polynomial p(nvars);
        if (!c.is_zero()) p.terms_[std::move(e)] = c;
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Max total degree over terms; zero polynomial reports 0.
    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        std::uint32_t d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != d) return false;
        return true;
    }

    GaussianRational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    void add_term(const Exponents& e, const GaussianRational& c) {
        if (e.size() != nvars_) throw std::invalid_argument("exponent length mismatch");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_ring(b);
        Polynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const GaussianRational& c) const {
        Polynomial r(nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }

    Polynomial pow(std::uint32_t n) const {
        Polynomial r = constant(nvars_, GaussianRational(1));
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1u) r = r * base;
            base = (n >>= 1) ? base * base : base;
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Exact formal derivative with respect to variable i (0-based).
    Polynomial partial(std::size_t i) const {
        if (i >= nvars_) throw std::out_of_range("variable index");
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            r.add_term(d, c * GaussianRational(static_cast<long>(e[i])));
        }
        return r;
    }

    /// Floating evaluation at a complex point (power tables per variable).
    std::complex<double> eval(const std::vector<std::complex<double>>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
        std::vector<std::uint32_t> maxe(nvars_, 0);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < nvars_; ++i) maxe[i] = std::max(maxe[i], e[i]);
        std::vector<std::vector<std::complex<double>>> pw(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            pw[i].resize(maxe[i] + 1);
            pw[i][0] = 1.0;
            for (std::uint32_t k = 1; k <= maxe[i]; ++k) pw[i][k] = pw[i][k - 1] * point[i];
        }
        std::complex<double> acc = 0.0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (std::size_t i = 0; i < nvars_; ++i) t *= pw[i][e[i]];
            acc += t;
        }
        return acc;
    }

    /// Exact evaluation at a Gaussian-rational point.
    GaussianRational eval_exact(const std::vector<GaussianRational>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
        GaussianRational acc;
        for (const auto& [e, c] : terms_) {
            GaussianRational t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Reinterpret into a ring with target_nvars variables, sending source
    /// variable i to target variable var_map[i].
    Polynomial remap(const std::vector<std::size_t>& var_map, std::size_t target_nvars) const {
        if (var_map.size() != nvars_) throw std::invalid_argument("var_map length mismatch");
        Polynomial r(target_nvars);
        for (const auto& [e, c] : terms_) {
            Exponents t(target_nvars, 0);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (var_map[i] >= target_nvars) throw std::out_of_range("var_map target");
                t[var_map[i]] += e[i];
            }
            r.add_term(t, c);
        }
        return r;
    }

    /// Substitute polynomials for variables (all over the target ring).
    Polynomial substitute(const std::vector<Polynomial>& values) const {
        if (values.size() != nvars_) throw std::invalid_argument("substitution arity mismatch");
        std::size_t tn = values.empty() ? 0 : values[0].nvars();
        Polynomial r(tn);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(tn, c);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] > 0) t = t * values[i].pow(e[i]);
            r += t;
        }
        return r;
    }

    /// Pad with a fresh first variable x0 so every term reaches target_degree.
    Polynomial homogenize(std::uint32_t target_degree) const {
        std::uint32_t d = degree();
        if (target_degree < d) throw std::invalid_argument("target degree below degree");
        Polynomial r(nvars_ + 1);
        for (const auto& [e, c] : terms_) {
            Exponents t(nvars_ + 1);
            t[0] = target_degree - total_degree(e);
            std::copy(e.begin(), e.end(), t.begin() + 1);
            r.add_term(t, c);
        }
        return r;
    }

    /// Set variable `chart` to 1 and drop it.
    Polynomial dehomogenize(std::size_t chart) const {
        if (chart >= nvars_) throw std::out_of_range("chart index");
        Polynomial r(nvars_ - 1);
        for (const auto& [e, c] : terms_) {
            Exponents t;
            t.reserve(nvars_ - 1);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (i != chart) t.push_back(e[i]);
            r.add_term(t, c);
        }
        return r;
    }

  private:
    void check_same_ring(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
    }

    std::size_t nvars_;
    TermMap terms_;
};

/// Ordered list of polynomials sharing one variable set.
struct PolySystem {
    std::size_t nvars = 0;
    std::vector<Polynomial> polys;

    PolySystem() = default;
    PolySystem(std::size_t n, std::vector<Polynomial> ps) : nvars(n), polys(std::move(ps)) {
        for (const auto& p : polys)
            if (p.nvars() != nvars) throw std::invalid_argument("nvars mismatch in system");
    }

    std::size_t size() const { return polys.size(); }
    const Polynomial& operator[](std::size_t i) const { return polys.at(i); }
};

} // namespace residuum
