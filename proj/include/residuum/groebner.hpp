#pragma once

#include <set>
#include <tuple>
#include <vector>

#include "residuum/order.hpp"
#include "residuum/polynomial.hpp"

namespace residuum {

/// A computation exceeded its step budget; distinct from a negative answer.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

/// target = sum_j cofactors[j] * input[j] + remainder, exactly; the remainder
/// has no term divisible by a basis leading term.
struct MembershipCertificate {
    Polynomial target;
    std::vector<Polynomial> cofactors; // one per input generator
    Polynomial remainder;

    bool in_ideal() const { return remainder.is_zero(); }
};

/// Reduced Groebner basis (Buchberger) with each element tracked as an exact
/// combination of the input generators.
class GroebnerBasis {
  public:
    GroebnerBasis(PolySystem input, MonomialOrder order,
                  std::size_t step_budget = kDefaultStepBudget)
        : input_(std::move(input)), order_(std::move(order)), budget_(step_budget) {
        if (input_.size() == 0) throw std::invalid_argument("empty generator list");
        compute();
    }

    const PolySystem& input() const { return input_; }
    const MonomialOrder& order() const { return order_; }
    std::size_t size() const { return basis_.size(); }
    const Polynomial& operator[](std::size_t i) const { return basis_[i].p; }
    const std::vector<Polynomial>& cofactor_row(std::size_t i) const { return basis_[i].rep; }

    std::vector<Exponents> leading_exponents() const {
        std::vector<Exponents> out;
        out.reserve(basis_.size());
        for (const auto& b : basis_) out.push_back(leading_term(b.p, order_).first);
        return out;
    }

    bool is_unit_ideal() const {
        return basis_.size() == 1 && !basis_[0].p.is_zero() && basis_[0].p.degree() == 0;
    }

    /// Full multivariate division of p by the basis.
    MembershipCertificate normal_form(const Polynomial& p) const {
        if (p.nvars() != input_.nvars) throw std::invalid_argument("nvars mismatch");
        std::size_t budget = budget_;
        Tracked t{p, zero_row()};
        t = reduce_full(std::move(t), all_reducers(), budget);
        // The reducer keeps (p_remaining + remainder - sum rep[j]*input[j])
        // invariant, so target = remainder - sum rep[j]*input[j].
        MembershipCertificate cert;
        cert.target = p;
        cert.remainder = std::move(t.p);
        cert.cofactors.reserve(t.rep.size());
        for (auto& c : t.rep) cert.cofactors.push_back(-c);
        return cert;
    }

  private:
    struct Tracked {
        Polynomial p;
        std::vector<Polynomial> rep; // combination of input generators
    };

    std::vector<Polynomial> zero_row() const {
        return std::vector<Polynomial>(input_.size(), Polynomial(input_.nvars));
    }

    std::vector<const Tracked*> all_reducers() const {
        std::vector<const Tracked*> r;
        r.reserve(basis_.size());
        for (const auto& b : basis_) r.push_back(&b);
        return r;
    }

    void charge(std::size_t& budget) const {
        if (budget == 0) throw ResourceLimitError("Groebner step budget exhausted");
        --budget;
    }

    // Full division: returns the remainder in .p. Maintains the invariant
    // (.p + moved-out remainder - sum .rep[j]*input[j]) across steps, so an
    // input satisfying t.p = sum t.rep*input yields remainder = sum rep*input.
    Tracked reduce_full(Tracked t, const std::vector<const Tracked*>& reducers,
                        std::size_t& budget) const {
        Polynomial rem(input_.nvars);
        while (!t.p.is_zero()) {
            auto [le, lc] = leading_term(t.p, order_);
            bool reduced = false;
            for (const Tracked* b : reducers) {
                auto [be, bc] = leading_term(b->p, order_);
                if (!divides(be, le)) continue;
                charge(budget);
                Exponents q(le.size());
                for (std::size_t i = 0; i < le.size(); ++i) q[i] = le[i] - be[i];
                Polynomial mult = Polynomial::monomial(input_.nvars, q, lc / bc);
                t.p -= mult * b->p;
                for (std::size_t j = 0; j < t.rep.size(); ++j) t.rep[j] -= mult * b->rep[j];
                reduced = true;
                break;
            }
            if (!reduced) {
                charge(budget);
                Polynomial lt = Polynomial::monomial(input_.nvars, le, lc);
                rem += lt;
                t.p -= lt;
            }
        }
        t.p = std::move(rem);
        return t;
    }

    void compute() {
        const std::size_t n = input_.nvars;
        const std::size_t m = input_.size();
        std::size_t budget = budget_;

        for (std::size_t j = 0; j < m; ++j) {
            if (input_[j].is_zero()) continue;
            Tracked t{input_[j], zero_row()};
            t.rep[j] = Polynomial::constant(n, GaussianRational(1));
            normalize(t);
            basis_.push_back(std::move(t));
        }

        // pair queue ordered by (lcm degree, i, j): deterministic normal strategy
        using PairKey = std::tuple<std::uint32_t, std::size_t, std::size_t>;
        std::set<PairKey> queue;
        auto push_pairs_with = [&](std::size_t j) {
            for (std::size_t i = 0; i < j; ++i)
                queue.insert({total_degree(pair_lcm(i, j)), i, j});
        };
        for (std::size_t j = 1; j < basis_.size(); ++j) push_pairs_with(j);

        while (!queue.empty()) {
            auto [deg, i, j] = *queue.begin();
            queue.erase(queue.begin());

            auto [ei, ci] = leading_term(basis_[i].p, order_);
            auto [ej, cj] = leading_term(basis_[j].p, order_);
            if (coprime(ei, ej)) continue; // product criterion

            Exponents lcm = pair_lcm(i, j);
            auto shifted = [&](const Tracked& b, const Exponents& be,
                              const GaussianRational& bc) {
                Exponents q(n);
                for (std::size_t k = 0; k < n; ++k) q[k] = lcm[k] - be[k];
                Polynomial mult = Polynomial::monomial(n, q, GaussianRational(1) / bc);
                Tracked out{mult * b.p, {}};
                out.rep.reserve(m);
                for (const auto& r : b.rep) out.rep.push_back(mult * r);
                return out;
            };
            Tracked a = shifted(basis_[i], ei, ci);
            Tracked b = shifted(basis_[j], ej, cj);
            Tracked s{a.p - b.p, {}};
            s.rep.reserve(m);
            for (std::size_t k = 0; k < m; ++k) s.rep.push_back(a.rep[k] - b.rep[k]);

            s = reduce_full(std::move(s), all_reducers(), budget);
            if (s.p.is_zero()) continue;
            normalize(s);
            basis_.push_back(std::move(s));
            push_pairs_with(basis_.size() - 1);
        }

        interreduce(budget);
        sort_canonically();
    }

    Exponents pair_lcm(std::size_t i, std::size_t j) const {
        auto a = leading_term(basis_[i].p, order_).first;
        auto b = leading_term(basis_[j].p, order_).first;
        Exponents l(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) l[k] = std::max(a[k], b[k]);
        return l;
    }

    static bool coprime(const Exponents& a, const Exponents& b) {
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] > 0 && b[k] > 0) return false;
        return true;
    }

    void normalize(Tracked& t) const {
        auto [e, c] = leading_term(t.p, order_);
        if (c == GaussianRational(1)) return;
        GaussianRational inv = GaussianRational(1) / c;
        t.p = t.p.scaled(inv);
        for (auto& r : t.rep) r = r.scaled(inv);
    }

    void interreduce(std::size_t& budget) {
        // minimalize: drop elements whose leading term is divisible by another's
        std::vector<Exponents> leads;
        leads.reserve(basis_.size());
        for (const auto& b : basis_) leads.push_back(leading_term(b.p, order_).first);
        std::vector<Tracked> kept;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
                if (i == j) continue;
                if (divides(leads[j], leads[i]) && (leads[j] != leads[i] || j < i))
                    redundant = true;
            }
            if (!redundant) kept.push_back(std::move(basis_[i]));
        }
        basis_ = std::move(kept);

        // tail-reduce each element against all the others
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            std::vector<const Tracked*> others;
            others.reserve(basis_.size() - 1);
            for (std::size_t j = 0; j < basis_.size(); ++j)
                if (j != i && !basis_[j].p.is_zero()) others.push_back(&basis_[j]);
            Tracked t = reduce_full(std::move(basis_[i]), others, budget);
            if (!t.p.is_zero()) normalize(t);
            basis_[i] = std::move(t);
        }
        std::erase_if(basis_, [](const Tracked& t) { return t.p.is_zero(); });
    }

    void sort_canonically() {
        std::sort(basis_.begin(), basis_.end(), [this](const Tracked& a, const Tracked& b) {
            return order_.less(leading_term(a.p, order_).first,
                               leading_term(b.p, order_).first);
        });
    }

    PolySystem input_;
    MonomialOrder order_;
    std::size_t budget_;
    std::vector<Tracked> basis_;
};

} // namespace residuum
