#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "residuum/matrix.hpp"
#include "residuum/projective.hpp"

using namespace residuum;
using Catch::Approx;
using testutil::P;
using testutil::sys;

static const std::vector<std::string> P1 = {"x0", "x1"};
static const std::vector<std::string> P2 = {"x0", "x1", "x2"};
static const std::vector<std::string> Z2 = {"z1", "z2"};

static QuadratureConfig deep_grid(std::size_t samples, int rungs = 10) {
    QuadratureConfig q;
    q.scheme = Scheme::TensorGrid;
    q.samples = samples;
    q.tau_ladder.clear();
    for (int k = 0; k < rungs; ++k) q.tau_ladder.push_back(0.1 * std::pow(0.5, k));
    return q;
}

TEST_CASE("tau = 1 quadrature unit value is 1 - log 2") {
    QuadratureConfig q = deep_grid(30'000);
    Weights w;
    w.q = {0};
    w.rho = {RhoSpec::affine_power(1)};
    PolySystem qa(1, {P("x0", P1).dehomogenize(1)});
    auto ladder = projective_mass_ladder(qa, w, 1, 0, {1.0}, 1, q);
    REQUIRE(ladder[0].real() == Approx(1.0 - std::log(2.0)).margin(1e-3));
    REQUIRE(std::abs(ladder[0].imag()) < 1e-12);
}

TEST_CASE("hypersurface degrees in P^1") {
    QuadratureConfig q = deep_grid(30'000);
    DegreeEstimate d1 = hypersurface_degree_numeric(P("x0", P1), q);
    REQUIRE(d1.value == Approx(1.0).epsilon(5e-2));
    REQUIRE(d1.snapped == 1);

    // squared line counts with multiplicity 2
    DegreeEstimate d2 = hypersurface_degree_numeric(P("x0^2", P1), q);
    REQUIRE(d2.value == Approx(2.0).epsilon(5e-2));

    REQUIRE_THROWS_AS(hypersurface_degree_numeric(Polynomial(2), q), std::invalid_argument);
    REQUIRE_THROWS_AS(hypersurface_degree_numeric(P("x0 + 1", P1), q), std::invalid_argument);
}

TEST_CASE("conic degree in P^2 by Fubini-Study sampling") {
    QuadratureConfig q;
    q.scheme = Scheme::MonteCarlo;
    q.samples = 600'000;
    q.seed = 11;
    q.tau_ladder.clear();
    for (double t = 0.4; t >= 1.4e-3; t *= 0.5) q.tau_ladder.push_back(t);
    DegreeEstimate dc = hypersurface_degree_numeric(P("x0^2 + x1*x2", P2), q);
    REQUIRE(dc.value == Approx(2.0).epsilon(5e-2));
}

TEST_CASE("hypersurface additivity on products") {
    // zeros of generic lines sit away from the chart origin, where polar grids
    // lose resolution: sample Fubini-Study instead
    QuadratureConfig q;
    q.scheme = Scheme::MonteCarlo;
    q.samples = 1'200'000;
    q.seed = 23;
    q.tau_ladder.clear();
    for (double t = 0.05; t >= 1.2e-3; t *= 0.5) q.tau_ladder.push_back(t);
    SampleRng rng(2, 0);
    for (int trial = 0; trial < 2; ++trial) {
        long a = rng.next_int(1, 5), b = rng.next_int(1, 5);
        Polynomial f = P("x0", P1).scaled(GaussianRational(a)) +
                       P("x1", P1).scaled(GaussianRational(b));
        Polynomial g = P("x0", P1).scaled(GaussianRational(rng.next_int(1, 4))) -
                       P("x1", P1).scaled(GaussianRational(rng.next_int(1, 4)));
        DegreeEstimate df = hypersurface_degree_numeric(f, q);
        DegreeEstimate dg = hypersurface_degree_numeric(g, q);
        DegreeEstimate dfg = hypersurface_degree_numeric(f * g, q);
        REQUIRE(df.value == Approx(1.0).margin(0.25));
        REQUIRE(dg.value == Approx(1.0).margin(0.25));
        REQUIRE(dfg.value == Approx(df.value + dg.value)
                                 .margin(dfg.error_bar + df.error_bar + dg.error_bar + 1e-1));
    }
}

TEST_CASE("point cycle in P^2 has unit mass") {
    ProjectiveCycleProblem prob;
    prob.p = sys({"x1", "x2"}, P2);
    prob.codim = 2;
    prob.seed = 5;
    QuadratureConfig q = deep_grid(300'000);
    DegreeEstimate est = cycle_degree_numeric(prob, q);
    REQUIRE(est.value == Approx(1.0).margin(5e-2));
    REQUIRE(est.chart == 0);
}

TEST_CASE("cycle degree is stable across section seeds") {
    ProjectiveCycleProblem prob;
    prob.p = sys({"x1", "x2"}, P2);
    prob.codim = 2;
    QuadratureConfig q = deep_grid(200'000);
    prob.seed = 5;
    DegreeEstimate a = cycle_degree_numeric(prob, q);
    prob.seed = 17;
    DegreeEstimate b = cycle_degree_numeric(prob, q);
    REQUIRE(std::abs(a.value - b.value) < a.error_bar + b.error_bar + 5e-2);
}

TEST_CASE("cycle degree agrees with the hypersurface route for m = 1") {
    ProjectiveCycleProblem prob;
    prob.p = PolySystem(2, {P("x0^2", P1)});
    prob.codim = 1;
    prob.seed = 3;
    QuadratureConfig q = deep_grid(40'000, 12);
    DegreeEstimate cyc = cycle_degree_numeric(prob, q);
    DegreeEstimate hyp = hypersurface_degree_numeric(P("x0^2", P1), q);
    REQUIRE(std::abs(cyc.value - hyp.value) < cyc.error_bar + hyp.error_bar + 5e-2);
}

TEST_CASE("theorem 3.1 weight table is reproduced exactly") {
    ProjectiveCycleProblem prob;
    prob.p = sys({"x1^2", "x1*x2", "x2^3"}, P2); // degrees sort to 3, 2, 2
    prob.codim = 2;
    prob.seed = 2;
    QuadratureConfig q = deep_grid(20'000, 5);
    DegreeEstimate est = cycle_degree_numeric(prob, q);

    const std::size_t d = 2, m = 3;
    const std::uint32_t d1 = 3;
    const std::size_t big_n = d * d1 * d1 + 1; // d * D1^d + 1
    REQUIRE(est.weights_used.q.size() == d + m);
    for (std::size_t j = 0; j < d; ++j) {
        REQUIRE(est.weights_used.q[j] == 0);
        REQUIRE(est.weights_used.rho[j].kind == RhoSpec::Kind::AffinePower);
        REQUIRE(est.weights_used.rho[j].exponent == mpq_class(d1));
    }
    std::vector<std::uint32_t> sorted_degs = {3, 2, 2};
    for (std::size_t k = 0; k < m; ++k) {
        REQUIRE(est.weights_used.q[d + k] == big_n);
        REQUIRE(est.weights_used.rho[d + k].exponent ==
                mpq_class(static_cast<long>((big_n + 1) * sorted_degs[k])));
    }
    REQUIRE(est.sections_used.has_value());
    for (const auto& qq : est.sections_used->q.polys) {
        REQUIRE(qq.is_homogeneous());
        REQUIRE(qq.degree() == d1);
    }
}

// Local intersection multiplicity at the origin as the vanishing order of the
// z2-resultant: an independent exact oracle for two-variable section pairs.
static std::size_t resultant_multiplicity(const Polynomial& g1, const Polynomial& g2) {
    auto coeffs_in_z2 = [](const Polynomial& g) {
        std::vector<Polynomial> out;
        for (const auto& [e, c] : g.terms()) {
            std::size_t k = e[1];
            if (out.size() <= k) out.resize(k + 1, Polynomial(1));
            Exponents e1 = {e[0]};
            out[k] += Polynomial::monomial(1, e1, c);
        }
        if (out.empty()) out.resize(1, Polynomial(1));
        return out;
    };
    auto a = coeffs_in_z2(g1), b = coeffs_in_z2(g2);
    std::size_t da = a.size() - 1, db = b.size() - 1;
    std::size_t size = da + db;
    PolyMatrix syl(size, std::vector<Polynomial>(size, Polynomial(1)));
    for (std::size_t r = 0; r < db; ++r)
        for (std::size_t k = 0; k <= da; ++k) syl[r][r + k] = a[da - k];
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t k = 0; k <= db; ++k) syl[db + r][r + k] = b[db - k];
    Polynomial res = poly_determinant(std::move(syl));
    REQUIRE(!res.is_zero()); // generic sections share no component
    std::size_t ord = 1'000;
    for (const auto& [e, c] : res.terms()) ord = std::min<std::size_t>(ord, e[0]);
    return ord;
}

// Newton-polyhedron multiplicity of a monomial ideal in two variables:
// 2! times the area below the lower hull of the exponent set.
static double newton_multiplicity_2d(const std::vector<std::pair<double, double>>& pts) {
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    // lower hull, left to right
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : sorted) {
        while (hull.size() >= 2) {
            auto [x1, y1] = hull[hull.size() - 2];
            auto [x2, y2] = hull.back();
            if ((x2 - x1) * (p.second - y1) - (p.first - x1) * (y2 - y1) <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i)
        area += 0.5 * (hull[i].second + hull[i + 1].second) * (hull[i + 1].first - hull[i].first);
    return 2.0 * area;
}

TEST_CASE("point multiplicities against exact oracles") {
    QuadratureConfig q = deep_grid(400'000, 12);

    Estimate e1 = point_multiplicity_numeric(sys({"z1", "z2"}, Z2), q, 3);
    REQUIRE(e1.value.real() == Approx(1.0).margin(5e-2));

    // complete intersection: multiplicity equals the colength 6
    PolySystem ci = sys({"z1^2", "z2^3"}, Z2);
    REQUIRE(quotient_dimension(ci) == 6);
    Estimate e6 = point_multiplicity_numeric(ci, q, 3);
    REQUIRE(e6.value.real() == Approx(6.0).margin(1e-1));

    // the non-complete intersection: colength 4 but multiplicity 5
    PolySystem m5 = sys({"z1^2", "z1*z2", "z2^3"}, Z2);
    REQUIRE(quotient_dimension(m5) == 4);
    double newton = newton_multiplicity_2d({{2, 0}, {1, 1}, {0, 3}});
    REQUIRE(newton == Approx(5.0));

    // resultant oracle over exact generic sections
    SampleRng rng(77, 0);
    Polynomial g1(2), g2(2);
    for (std::size_t k = 0; k < 3; ++k) {
        g1 += m5[k].scaled(GaussianRational(rng.next_int(-9, 9) * 2 + 1));
        g2 += m5[k].scaled(GaussianRational(rng.next_int(-9, 9) * 2 + 1));
    }
    REQUIRE(resultant_multiplicity(g1, g2) == 5);

    Estimate e5 = point_multiplicity_numeric(m5, q, 3);
    REQUIRE(e5.value.real() == Approx(5.0).margin(1e-1));
    REQUIRE(std::abs(e5.value.real() - 4.0) > 0.5); // colength would be wrong
}

TEST_CASE("multiplicity sandwich: colength <= e <= product of the d largest degrees") {
    QuadratureConfig q = deep_grid(300'000, 12);
    struct Case {
        std::vector<std::string> gens;
        std::size_t colength;
        double bound;
    };
    for (const auto& c : {Case{{"z1", "z2"}, 1, 1.0}, Case{{"z1^2", "z2^3"}, 6, 6.0},
                          Case{{"z1^2", "z1*z2", "z2^3"}, 4, 6.0}}) {
        PolySystem f = sys(c.gens, Z2);
        REQUIRE(quotient_dimension(f) == c.colength);
        Estimate e = point_multiplicity_numeric(f, q, 5);
        double val = e.value.real();
        double slack = e.error_bar + 5e-2;
        REQUIRE(val >= static_cast<double>(c.colength) - slack);
        REQUIRE(val <= c.bound + slack);
    }
}

TEST_CASE("point multiplicity rejects non-isolated zeros") {
    QuadratureConfig q = deep_grid(20'000, 5);
    REQUIRE_THROWS_AS(point_multiplicity_numeric(sys({"z1^2", "z1*z2"}, Z2), q, 3),
                      std::domain_error);
}
