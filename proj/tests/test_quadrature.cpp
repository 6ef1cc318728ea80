#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "residuum/quadrature.hpp"

using namespace residuum;
using Catch::Approx;

TEST_CASE("gauss legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre_01(12, x, w);
    double s = 0.0, s5 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += w[i];
        s5 += w[i] * std::pow(x[i], 5);
    }
    REQUIRE(s == Approx(1.0).epsilon(1e-13));
    REQUIRE(s5 == Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("polydisc grid integrates areas") {
    // area of the unit disc and second moment
    SamplePlan plan = polydisc_grid(1, 1.0, 5000);
    double area = 0.0, moment = 0.0;
    std::vector<Complex> z(1);
    for (std::size_t i = 0; i < plan.total; ++i) {
        double w;
        plan.at(i, z, w);
        area += w;
        moment += w * std::norm(z[0]);
    }
    REQUIRE(area == Approx(std::numbers::pi).epsilon(1e-10));
    REQUIRE(moment == Approx(std::numbers::pi / 2.0).epsilon(1e-10));
}

TEST_CASE("monte carlo polydisc integrates areas roughly") {
    SamplePlan plan = polydisc_mc(2, 1.5, 200000, 7);
    double vol = 0.0;
    std::vector<Complex> z(2);
    for (std::size_t i = 0; i < plan.total; ++i) {
        double w;
        plan.at(i, z, w);
        vol += w * (std::norm(z[0]) < 1.0 ? 1.0 : 0.0);
    }
    // P(|z1| < 1) = (1/1.5)^2; volume factor pi^2 1.5^4
    double expect = std::numbers::pi * std::numbers::pi * 1.5 * 1.5;
    REQUIRE(vol == Approx(expect).epsilon(2e-2));
}

TEST_CASE("parallel block sums are thread-count invariant") {
    auto run = [](unsigned threads) {
        return parallel_block_sum(100'000, 2, threads,
                                  [](std::size_t i, std::vector<Complex>& acc) {
                                      SampleRng rng(42, i);
                                      acc[0] += Complex(rng.next_double(), rng.next_double());
                                      acc[1] += Complex(1.0, 0.0);
                                  });
    };
    auto a = run(1), b = run(2), c = run(8);
    REQUIRE(a[0] == b[0]);
    REQUIRE(b[0] == c[0]);
    REQUIRE(a[1] == c[1]);
}

TEST_CASE("fubini study sampling") {
    auto pts = fubini_study_sample(1, 100'000, 31);
    double mean = 0.0, wsum = 0.0;
    for (const auto& p : pts) {
        mean += p.weight * std::norm(p.x[0]);
        wsum += p.weight;
    }
    REQUIRE(wsum == Approx(1.0).epsilon(1e-9));
    REQUIRE(mean == Approx(0.5).margin(1e-2));

    auto again = fubini_study_sample(1, 100, 31);
    auto first = fubini_study_sample(1, 100, 31);
    for (std::size_t i = 0; i < again.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) REQUIRE(again[i].x[j] == first[i].x[j]);
}

TEST_CASE("extrapolation recovers the model") {
    std::vector<double> taus = {0.1, 0.05, 0.025, 0.0125, 0.00625};
    std::vector<Complex> vals;
    for (double t : taus) vals.push_back(Complex(2.0 + 0.7 * t * std::log(t) - 0.3 * t, 0.0));
    Estimate e = extrapolate(taus, vals, 1e-2);
    REQUIRE(e.value.real() == Approx(2.0).margin(1e-10));
    REQUIRE(e.converged);

    std::vector<Complex> constant(taus.size(), Complex(1.25, -0.5));
    Estimate c = extrapolate(taus, constant, 1e-2);
    REQUIRE(c.value.real() == Approx(1.25).margin(1e-10));
    REQUIRE(c.value.imag() == Approx(-0.5).margin(1e-10));
    REQUIRE(c.error_bar == Approx(0.0).margin(1e-9));
}

TEST_CASE("extrapolation handles the degree calibration closed form") {
    // D(tau) = 1 - tau log((1+tau)/tau) on the documented ladder
    std::vector<double> taus = {0.1, 0.05, 0.025, 0.0125};
    std::vector<Complex> vals;
    for (double t : taus) vals.push_back(Complex(1.0 - t * std::log((1.0 + t) / t), 0.0));
    Estimate e = extrapolate(taus, vals, 1e-2);
    REQUIRE(e.value.real() == Approx(1.0).margin(1e-2));
}

TEST_CASE("quadrature config validation") {
    QuadratureConfig q;
    q.tau_ladder = {0.1, 0.2, 0.3};
    REQUIRE_THROWS_AS(q.validate(), std::invalid_argument);
    q.tau_ladder = {0.1, 0.05};
    REQUIRE_THROWS_AS(q.validate(), std::invalid_argument);
}
