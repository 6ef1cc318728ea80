#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace residuum {

using Complex = std::complex<double>;

/// Pointwise exterior algebra over the covector basis dz_1..dz_n, dzbar_1..dzbar_n
/// (n <= 4). Basis elements are pairs of bitmasks, representing
/// dz_{a asc} ^ dzbar_{b asc}; signs come from merge parities, never from
/// hand bookkeeping.
class Form {
  public:
    struct Term {
        std::uint16_t dz = 0;
        std::uint16_t bar = 0;
        Complex c{};
    };

    explicit Form(std::size_t n = 1) : n_(n) {
        if (n < 1 || n > 4) throw std::invalid_argument("form dimension out of range");
    }

    static Form scalar(std::size_t n, Complex c) {
        Form f(n);
        if (c != 0.0) f.terms_.push_back({0, 0, c});
        return f;
    }
    /// (1,0)-covector sum_i v_i dz_i.
    static Form covector_dz(std::size_t n, const std::vector<Complex>& v) {
        Form f(n);
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0.0) f.terms_.push_back({static_cast<std::uint16_t>(1u << i), 0, v[i]});
        return f;
    }
    /// (0,1)-covector sum_i v_i dzbar_i.
    static Form covector_dzbar(std::size_t n, const std::vector<Complex>& v) {
        Form f(n);
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0.0) f.terms_.push_back({0, static_cast<std::uint16_t>(1u << i), v[i]});
        return f;
    }
    static Form basis_element(std::size_t n, std::uint16_t dz_mask, std::uint16_t bar_mask,
                              Complex c) {
        Form f(n);
        if (c != 0.0) f.terms_.push_back({dz_mask, bar_mask, c});
        return f;
    }

    std::size_t dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    Form& operator+=(const Form& o) {
        check(o);
        for (const auto& t : o.terms_) add_term(t.dz, t.bar, t.c);
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }

    Form operator*(Complex s) const {
        Form f(n_);
        if (s == 0.0) return f;
        f.terms_ = terms_;
        for (auto& t : f.terms_) t.c *= s;
        return f;
    }

    friend Form wedge(const Form& a, const Form& b) {
        a.check(b);
        Form out(a.n_);
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                if ((ta.dz & tb.dz) || (ta.bar & tb.bar)) continue;
                int sign = merge_sign(ta.dz, tb.dz) * merge_sign(ta.bar, tb.bar);
                if ((std::popcount(ta.bar) * std::popcount(tb.dz)) & 1) sign = -sign;
                out.add_term(static_cast<std::uint16_t>(ta.dz | tb.dz),
                             static_cast<std::uint16_t>(ta.bar | tb.bar),
                             static_cast<double>(sign) * ta.c * tb.c);
            }
        }
        return out;
    }

    /// Coefficient of dz_1^..^dz_n ^ dzbar_1^..^dzbar_n.
    Complex top_coefficient() const {
        const std::uint16_t full = static_cast<std::uint16_t>((1u << n_) - 1u);
        for (const auto& t : terms_)
            if (t.dz == full && t.bar == full) return t.c;
        return 0.0;
    }

    /// Coefficient against the real volume form dV = prod (i/2) dz_k ^ dzbar_k,
    /// i.e. top_coefficient times (-1)^(n(n-1)/2) (-2i)^n.
    Complex top_coefficient_vs_volume() const {
        Complex k = 1.0;
        for (std::size_t j = 0; j < n_; ++j) k *= Complex(0.0, -2.0);
        if ((n_ * (n_ - 1) / 2) & 1) k = -k;
        return top_coefficient() * k;
    }

  private:
    void check(const Form& o) const {
        if (n_ != o.n_) throw std::invalid_argument("form dimension mismatch");
    }

    void add_term(std::uint16_t dz, std::uint16_t bar, Complex c) {
        if (c == 0.0) return;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].dz == dz && terms_[i].bar == bar) {
                terms_[i].c += c;
                if (terms_[i].c == 0.0) terms_.erase(terms_.begin() + i);
                return;
            }
        }
        terms_.push_back({dz, bar, c});
    }

    // parity of inversions when sorting the concatenation (x-block, y-block)
    static int merge_sign(std::uint16_t x, std::uint16_t y) {
        int inversions = 0;
        while (y) {
            int j = std::countr_zero(y);
            y &= static_cast<std::uint16_t>(y - 1);
            inversions += std::popcount(static_cast<unsigned>(x) >> (j + 1));
        }
        return (inversions & 1) ? -1 : 1;
    }

    std::size_t n_;
    std::vector<Term> terms_;
};

/// Smooth bump: exp(1 - 1/(1-t)) for t in [0,1), 0 beyond; argument t = |z|^2/R^2.
inline double bump_chi(double t) {
    if (t >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t));
}

/// Smooth cutoff that is exactly 1 on t <= 1/4 and 0 beyond 1: mass estimates
/// pair with this so the bump does not vary across the kernel's concentration
/// region (a varying cutoff feeds fractional-power tau corrections).
inline double bump_chi_plateau(double t) {
    constexpr double t0 = 0.25;
    if (t <= t0) return 1.0;
    if (t >= 1.0) return 0.0;
    double x = (1.0 - t) / (1.0 - t0);
    double a = std::exp(-1.0 / x);
    double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

} // namespace residuum
