#include <doctest.h>

#include "loopfact/errors.hpp"
#include "loopfact/weyl.hpp"

using namespace loopfact;

TEST_CASE("pairings on the coroot lattice") {
    CHECK(pair_alpha(0, coroot_h0()) == 2);
    CHECK(pair_alpha(1, coroot_h1()) == 2);
    CHECK(pair_alpha(0, coroot_h1()) == -2);
    CHECK(pair_lambda(0, coroot_h0()) == 1);
    CHECK(pair_lambda(0, coroot_h1()) == 0);
    CHECK(pair_lambda(1, coroot_h1()) == 1);
    CHECK(pair_delta(coroot_h0()) == 1);
    CHECK(pair_delta(coroot_h1()) == 1);
}

TEST_CASE("simple reflections") {
    CHECK(reflect(1, coroot_h1()) == AffineCoroot{-1, 0});
    CHECK(reflect(0, coroot_h0()) == AffineCoroot{1, -1});
    CHECK(reflect(0, coroot_h1()) == AffineCoroot{-1, 2});
    // involutive
    CHECK(reflect(0, reflect(0, AffineCoroot{3, -2})) == AffineCoroot{3, -2});
    CHECK(reflect(1, reflect(1, AffineCoroot{3, -2})) == AffineCoroot{3, -2});
    // reflections fix the center c = h0 + h1
    CHECK(reflect(0, AffineCoroot{0, 5}) == AffineCoroot{0, 5});
    CHECK(reflect(1, AffineCoroot{0, 5}) == AffineCoroot{0, 5});
}

TEST_CASE("reduced words alternate") {
    CHECK(AffineWord{}.reduced());
    CHECK(AffineWord{{0, 1, 0, 1}}.reduced());
    CHECK_FALSE(AffineWord{{0, 0}}.reduced());
    CHECK_FALSE(AffineWord{{0, 1, 1}}.reduced());
    CHECK_THROWS_AS(inversion_coroots(AffineWord{{1, 1}}), DomainError);
}

TEST_CASE("inversion coroots") {
    auto one = inversion_coroots(AffineWord{{0}});
    REQUIRE(one.size() == 1);
    CHECK(one[0] == coroot_h0());

    auto two = inversion_coroots(AffineWord{{0, 1}});
    REQUIRE(two.size() == 2);
    CHECK(two[0] == AffineCoroot{-1, 1});
    CHECK(two[1] == AffineCoroot{-1, 2});  // s0(h1)

    // alternating words starting s0: h_{tau_j} = (-1, j)
    auto tau = inversion_coroots(AffineWord::alternating(0, 8));
    for (int j = 1; j <= 8; ++j) CHECK(tau[static_cast<size_t>(j - 1)] == AffineCoroot{-1, j});
}

TEST_CASE("exponents") {
    auto e = exponents(minus_Lambda0(), AffineWord{{0}});
    REQUIRE(e.size() == 1);
    CHECK(e[0] == 1);

    auto e4 = exponents(minus_Lambda0(), AffineWord::alternating(0, 4));
    CHECK(e4 == std::vector<std::int64_t>{1, 2, 3, 4});

    // -Lambda1 gives the (j-1) pattern on the same words
    auto f3 = exponents(minus_Lambda1(), AffineWord::alternating(0, 3));
    CHECK(f3 == std::vector<std::int64_t>{0, 1, 2});

    CHECK_THROWS_AS(exponents(Weight{0, 1}, AffineWord{{0}}), DomainError);
}

TEST_CASE("haar exponents, both closed forms") {
    CHECK(haar_exponents(AffineWord{{0}}) == std::vector<std::int64_t>{0});
    CHECK(haar_exponents(AffineWord{{1}}) == std::vector<std::int64_t>{0});
    for (int n = 0; n <= 12; ++n)
        for (int first = 0; first < 2; ++first) {
            if (n == 0 && first == 1) continue;
            auto h = haar_exponents(AffineWord::alternating(first, n));
            REQUIRE(static_cast<int>(h.size()) == n);
            for (int j = 1; j <= n; ++j) CHECK(h[static_cast<size_t>(j - 1)] == 2 * (j - 1));
        }
}

TEST_CASE("weyl representatives") {
    CHECK(weyl_representative(AffineWord{}).approx_equal(MatrixLoop::identity(), 0.0));

    MatrixLoop m = weyl_representative(AffineWord{{1, 0}});  // s1 s0 = -diag(z, 1/z)
    CHECK(std::abs(m.at(0, 0).coeff(1) + 1.0) < 1e-15);
    CHECK(std::abs(m.at(1, 1).coeff(-1) + 1.0) < 1e-15);
    CHECK(m.at(0, 1).l1_norm() == 0.0);
    CHECK(m.at(1, 0).l1_norm() == 0.0);

    MatrixLoop w3 = weyl_representative(AffineWord{{0, 1, 0}});
    MatrixLoop sq = w3 * w3;
    MatrixLoop minus_id(LaurentPoly(cplx(-1.0)), {}, {}, LaurentPoly(cplx(-1.0)));
    CHECK(sq.approx_equal(minus_id, 1e-15));
}

TEST_CASE("diagram automorphism") {
    CHECK(diagram_automorphism(MatrixLoop::identity())
              .approx_equal(MatrixLoop::identity(), 0.0));
    CHECK(diagram_automorphism(weyl_s1()).approx_equal(weyl_s0(), 0.0));
    CHECK(diagram_automorphism(weyl_s0()).approx_equal(weyl_s1(), 0.0));

    // negative-power elementary at level j maps to positive-power at j-1
    cplx z(0.3, -0.8);
    MatrixLoop im = diagram_automorphism(elementary_loop(1, z, PowerFamily::NegativePower));
    MatrixLoop expect = elementary_loop(0, -std::conj(z), PowerFamily::PositivePower);
    CHECK(im.approx_equal(expect, 1e-15));

    MatrixLoop g = elementary_loop(2, cplx(0.5, 0.4), PowerFamily::NegativePower) *
                   elementary_loop(1, cplx(-0.2, 0.1), PowerFamily::NegativePower);
    CHECK(diagram_automorphism(diagram_automorphism(g)).approx_equal(g, 0.0));
}

TEST_CASE("cell coordinates") {
    CHECK(cell_dimension_and_coords(AffineWord{}).dimension == 0);

    CellCoordinates c1 = cell_dimension_and_coords(AffineWord{{0}});
    CHECK(c1.dimension == 1);
    CHECK(c1.entry_row == 0);
    CHECK(c1.entry_col == 1);
    CHECK(c1.deg_lo == -1);
    CHECK(c1.deg_hi == -1);

    CellCoordinates c5 = cell_dimension_and_coords(AffineWord::alternating(0, 5));
    CHECK(c5.dimension == 5);
    CHECK(c5.deg_lo == -5);
    CHECK(c5.deg_hi == -1);

    CHECK_THROWS_AS(cell_dimension_and_coords(AffineWord{{1, 1, 0}}), DomainError);
}
