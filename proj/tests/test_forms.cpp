#include <catch2/catch_amalgamated.hpp>

#include "residuum/forms.hpp"

using namespace residuum;
using Catch::Approx;

TEST_CASE("volume normalization") {
    // dz1 ^ dzbar1 ^ ... ^ dzn ^ dzbarn against the real volume form:
    // each dz ^ dzbar pair contributes -2i
    for (std::size_t n = 1; n <= 3; ++n) {
        Form acc = Form::scalar(n, 1.0);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Complex> ek(n, 0.0);
            ek[k] = 1.0;
            acc = wedge(acc, Form::covector_dz(n, ek));
            acc = wedge(acc, Form::covector_dzbar(n, ek));
        }
        Complex expect = 1.0;
        for (std::size_t k = 0; k < n; ++k) expect *= Complex(0.0, -2.0);
        Complex got = acc.top_coefficient_vs_volume();
        REQUIRE(got.real() == Approx(expect.real()).margin(1e-14));
        REQUIRE(got.imag() == Approx(expect.imag()).margin(1e-14));
    }
}

TEST_CASE("repeated covector wedges to zero") {
    std::vector<Complex> v = {Complex(1.0, 2.0), Complex(-0.5, 0.25)};
    Form a = Form::covector_dzbar(2, v);
    REQUIRE(wedge(a, a).is_zero());
}

TEST_CASE("two covector wedge matches the hand determinant") {
    std::vector<Complex> v = {Complex(1.0, 1.0), Complex(2.0, -1.0)};
    std::vector<Complex> w = {Complex(0.5, 0.0), Complex(0.0, 3.0)};
    Form vw = wedge(Form::covector_dzbar(2, v), Form::covector_dzbar(2, w));
    // coefficient of dzbar1 ^ dzbar2 is v1 w2 - v2 w1
    Complex det = v[0] * w[1] - v[1] * w[0];
    bool found = false;
    for (const auto& t : vw.terms()) {
        if (t.dz == 0 && t.bar == 0b11) {
            found = true;
            REQUIRE(std::abs(t.c - det) < 1e-14);
        }
    }
    REQUIRE(found);
}

TEST_CASE("wedge anticommutes on 1-forms") {
    std::vector<Complex> v = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
    std::vector<Complex> w = {Complex(2.0, 1.0), Complex(1.0, -1.0)};
    Form ab = wedge(Form::covector_dz(2, v), Form::covector_dzbar(2, w));
    Form ba = wedge(Form::covector_dzbar(2, w), Form::covector_dz(2, v));
    for (const auto& t : ab.terms()) {
        Complex other = 0.0;
        for (const auto& s : ba.terms())
            if (s.dz == t.dz && s.bar == t.bar) other = s.c;
        REQUIRE(std::abs(t.c + other) < 1e-14);
    }
}

TEST_CASE("bump is a normalized cutoff") {
    REQUIRE(bump_chi(0.0) == Approx(1.0));
    REQUIRE(bump_chi(1.0) == 0.0);
    REQUIRE(bump_chi(2.0) == 0.0);
    REQUIRE(bump_chi(0.5) > 0.0);
    REQUIRE(bump_chi(0.5) < 1.0);
}
