#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "residuum/parse.hpp"
#include "residuum/sections.hpp"

using namespace residuum;
using testutil::P;

static const std::vector<std::string> XY = {"x", "y"};

TEST_CASE("gaussian rational arithmetic is exact") {
    GaussianRational a(1, 3), b(2, 5);
    REQUIRE((a + b) == GaussianRational(11, 15));
    GaussianRational i = GaussianRational::i();
    REQUIRE(i * i == GaussianRational(-1));
    GaussianRational z(mpq_class(1, 2), mpq_class(-3, 4));
    REQUIRE(z / z == GaussianRational(1));
    REQUIRE((z * z.conj()) == GaussianRational(z.norm()));
    REQUIRE(z.str() == "1/2-3/4i");
}

TEST_CASE("parse reads canonical grammar") {
    Polynomial p = P("x^2*y - 3/2", XY);
    REQUIRE(p.coeff({2, 1}) == GaussianRational(1));
    REQUIRE(p.coeff({0, 0}) == GaussianRational(-3, 2));
    REQUIRE(p.term_count() == 2);

    REQUIRE(P("0", XY).is_zero());
    REQUIRE(P("0", XY).term_count() == 0);

    REQUIRE(P("(x+i)*(x-i)", XY) == P("x^2+1", XY));
}

TEST_CASE("parse rejects malformed input with a position") {
    REQUIRE_THROWS_AS(P("x + ", XY), ParseError);
    REQUIRE_THROWS_AS(P("q^2", XY), ParseError);
    REQUIRE_THROWS_AS(P("x^", XY), ParseError);
    REQUIRE_THROWS_AS(P("(x", XY), ParseError);
    try {
        P("x * q", XY);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.position == 4);
    }
}

TEST_CASE("parse-print-parse is the identity") {
    SampleRng rng(2024, 0);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial p = testutil::random_poly(2, 4, rng, true);
        std::string s = to_string(p, XY);
        REQUIRE(P(s, XY) == p);
    }
    REQUIRE(to_string(Polynomial(2), XY) == "0");
}

TEST_CASE("ring operations") {
    Polynomial x = P("x", XY), y = P("y", XY);
    REQUIRE((x + y) * (x + y) == P("x^2 + 2*x*y + y^2", XY));
    REQUIRE((P("x+1", XY) * P("x-1", XY)) == P("x^2-1", XY));
    REQUIRE((x * Polynomial(2)).is_zero());
    REQUIRE(x.pow(0) == P("1", XY));

    Polynomial three_vars(3);
    REQUIRE_THROWS_AS(x * three_vars, std::invalid_argument);
}

TEST_CASE("evaluation") {
    Polynomial p = P("x^2 + y", XY);
    REQUIRE(p.eval({{2, 0}, {1, 0}}) == std::complex<double>(5, 0));
    Polynomial q = P("x", {"x"});
    REQUIRE(q.eval({{0, 1}}) == std::complex<double>(0, 1));
    REQUIRE_THROWS_AS(p.eval({{1, 0}}), std::invalid_argument);
}

TEST_CASE("eval matches exact rational evaluation") {
    SampleRng rng(7, 0);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p = testutil::random_poly(3, 4, rng, true);
        auto pt = testutil::random_rational_point(3, rng);
        GaussianRational exact;
        exact = p.eval_exact(pt);
        std::vector<std::complex<double>> fpt;
        for (const auto& c : pt) fpt.push_back(c.to_complex());
        std::complex<double> approx = p.eval(fpt);
        REQUIRE(std::abs(approx - exact.to_complex()) <
                1e-9 * (1.0 + std::abs(exact.to_complex())));
    }
}

TEST_CASE("eval is a ring homomorphism at rational points") {
    SampleRng rng(11, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial p = testutil::random_poly(2, 3, rng, true);
        Polynomial q = testutil::random_poly(2, 3, rng, true);
        auto pt = testutil::random_rational_point(2, rng);
        REQUIRE((p * q).eval_exact(pt) == p.eval_exact(pt) * q.eval_exact(pt));
        REQUIRE((p + q).eval_exact(pt) == p.eval_exact(pt) + q.eval_exact(pt));
    }
}

TEST_CASE("partial derivatives") {
    REQUIRE(P("x^2*y", XY).partial(0) == P("2*x*y", XY));
    REQUIRE(P("5", XY).partial(1).is_zero());
    REQUIRE_THROWS_AS(P("x", XY).partial(2), std::out_of_range);

    SampleRng rng(3, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial p = testutil::random_poly(2, 3, rng);
        Polynomial q = testutil::random_poly(2, 3, rng);
        REQUIRE((p * q).partial(0) == p * q.partial(0) + q * p.partial(0));
    }
}

TEST_CASE("homogenize and dehomogenize") {
    std::vector<std::string> X0X = {"x0", "x"};
    Polynomial p = P("x+1", {"x"});
    REQUIRE(p.homogenize(2) == P("x0*x + x0^2", X0X));
    REQUIRE_THROWS_AS(p.homogenize(0), std::invalid_argument);

    std::vector<std::string> proj = {"x0", "x1", "x2"};
    REQUIRE(P("x0^2 + x1*x2", proj).dehomogenize(0) == P("1 + x1*x2", {"x1", "x2"}));

    SampleRng rng(5, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial q = testutil::random_poly(2, 3, rng);
        if (q.is_zero()) continue;
        Polynomial h = q.homogenize(q.degree());
        REQUIRE(h.is_homogeneous());
        REQUIRE(h.dehomogenize(0) == q);
    }
}

TEST_CASE("generic sections") {
    std::vector<std::string> proj = {"x0", "x1", "x2"};
    PolySystem ps = testutil::sys({"x1^2", "x1*x2", "x2^3"}, proj);

    auto s1 = generic_sections(ps, 2, 42);
    auto s2 = generic_sections(ps, 2, 42);
    REQUIRE(s1.q.polys == s2.q.polys);
    REQUIRE(s1.lambda == s2.lambda);

    for (const auto& q : s1.q.polys) {
        REQUIRE(q.is_homogeneous());
        REQUIRE(q.degree() == 3);
    }

    // d = 1, m = 1 forces Q1 = beta11 * P1 (normalized to the unit row scale)
    PolySystem single(3, {P("x1^2", proj)});
    auto s3 = generic_sections(single, 1, 9);
    long b = s3.beta[0][0];
    REQUIRE(s3.q[0] == single[0].scaled(GaussianRational(b, std::abs(b))));

    REQUIRE_THROWS_AS(generic_sections(testutil::sys({"x1^2+x0"}, proj), 1, 1),
                      std::invalid_argument);
}
