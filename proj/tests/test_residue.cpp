#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "residuum/residue.hpp"

using namespace residuum;
using testutil::P;
using testutil::sys;

static const std::vector<std::string> Z2 = {"z1", "z2"};

TEST_CASE("monomial residues are Cauchy coefficients") {
    REQUIRE(monomial_residue(P("z1*z2^2", Z2), {2, 3}) == GaussianRational(1));
    REQUIRE(monomial_residue(P("1", Z2), {1, 1}) == GaussianRational(1));
    REQUIRE(monomial_residue(P("z1^2", Z2), {2, 3}) == GaussianRational(0));
    REQUIRE_THROWS_AS(monomial_residue(P("1", Z2), {0, 1}), std::invalid_argument);
}

TEST_CASE("randomized monomial residue against direct coefficient extraction") {
    SampleRng rng(101, 0);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = static_cast<std::uint32_t>(rng.next_int(1, 5));
        auto b = static_cast<std::uint32_t>(rng.next_int(1, 5));
        Polynomial h = testutil::random_poly(2, 6, rng, true);
        PolySystem f(2, {Polynomial::variable(2, 0, a), Polynomial::variable(2, 1, b)});
        GaussianRational expected = h.coeff({a - 1, b - 1});
        REQUIRE(local_residue(f, h) == expected);
    }
}

TEST_CASE("transformation data") {
    auto t1 = transform_to_monomial(sys({"z1^2", "z2^3"}, Z2));
    REQUIRE(t1.m == Exponents{2, 3});
    REQUIRE(t1.a[0][0] == P("1", Z2));
    REQUIRE(t1.a[0][1].is_zero());
    REQUIRE(t1.a[1][1] == P("1", Z2));

    auto t2 = transform_to_monomial(sys({"z2", "z1"}, Z2));
    REQUIRE(t2.m == Exponents{1, 1});
    REQUIRE(t2.a[0][1] == P("1", Z2));
    REQUIRE(t2.a[1][0] == P("1", Z2));

    // z1 = f1 - f2, z2 = f2 for f = (z1+z2, z2)
    auto t3 = transform_to_monomial(sys({"z1 + z2", "z2"}, Z2));
    REQUIRE(t3.m == Exponents{1, 1});
    REQUIRE(t3.a[0][0] == P("1", Z2));
    REQUIRE(t3.a[0][1] == P("-1", Z2));
    REQUIRE(t3.a[1][0].is_zero());
    REQUIRE(t3.a[1][1] == P("1", Z2));

    REQUIRE_THROWS_AS(transform_to_monomial(sys({"z1", "z1*z2"}, Z2)), VarietyNotPointError);
}

TEST_CASE("local residues") {
    REQUIRE(local_residue(sys({"z1^2", "z2^3"}, Z2), P("z1*z2^2", Z2)) == GaussianRational(1));
    REQUIRE(local_residue(sys({"z1^2", "z2^3"}, Z2), P("6*z1*z2^2", Z2)) == GaussianRational(6));
    REQUIRE(local_residue(sys({"z1", "z2"}, Z2), P("5 + z1 + z1*z2", Z2)) ==
            GaussianRational(5));
}

TEST_CASE("residue is linear in the numerator") {
    SampleRng rng(55, 0);
    PolySystem f = sys({"z1^2 - z2", "z2^2"}, Z2);
    auto t = transform_to_monomial(f);
    GaussianRational c(3, 7);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial h1 = testutil::random_poly(2, 4, rng, true);
        Polynomial h2 = testutil::random_poly(2, 4, rng, true);
        auto lhs = local_residue({f, h1 + h2.scaled(c)}, t);
        auto rhs = local_residue({f, h1}, t) + c * local_residue({f, h2}, t);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("residue does not depend on the transformation data used") {
    PolySystem f = sys({"z1^2", "z2^3"}, Z2);
    Polynomial h = P("z1*z2^2 + 3*z1^2 + (2+i)*z1*z2^3", Z2);
    auto t = transform_to_monomial(f);

    // pad: z_i^(m_i + 1) = sum_j (z_i * A_ij) f_j is equally valid data
    TransformationData padded;
    padded.m = t.m;
    padded.a = t.a;
    for (std::size_t i = 0; i < 2; ++i) {
        padded.m[i] += 1;
        for (auto& entry : padded.a[i]) entry = entry * Polynomial::variable(2, i);
    }
    REQUIRE(local_residue({f, h}, t) == local_residue({f, h}, padded));
}

TEST_CASE("duality: colength equals residue of the Jacobian") {
    auto r1 = duality_check(sys({"z1", "z2"}, Z2));
    REQUIRE(r1.dim == 1);
    REQUIRE(r1.res_jacobian == GaussianRational(1));
    REQUIRE(r1.agree);

    auto r2 = duality_check(sys({"z1^2", "z2^3"}, Z2));
    REQUIRE(r2.dim == 6);
    REQUIRE(r2.res_jacobian == GaussianRational(6));
    REQUIRE(r2.agree);

    auto r3 = duality_check(sys({"z1^2 - z2", "z2^2"}, Z2));
    REQUIRE(r3.dim == 4);
    REQUIRE(r3.res_jacobian == GaussianRational(4));
    REQUIRE(r3.agree);
}

TEST_CASE("residues annihilate the ideal") {
    PolySystem corpus[] = {sys({"z1^2", "z2^3"}, Z2), sys({"z1", "z2"}, Z2),
                           sys({"z1^2 - z2", "z2^2"}, Z2)};
    SampleRng rng(77, 0);
    for (const auto& f : corpus) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            Polynomial h = testutil::random_poly(2, 3, rng, true);
            REQUIRE(ideal_annihilation_check(f, i, h) == GaussianRational(0));
        }
    }
    REQUIRE(ideal_annihilation_check(sys({"z1^2", "z2^3"}, Z2), 0, P("z2^2", Z2)) ==
            GaussianRational(0));
    REQUIRE(ideal_annihilation_check(sys({"z1", "z2"}, Z2), 0, P("1", Z2)) ==
            GaussianRational(0));
}
