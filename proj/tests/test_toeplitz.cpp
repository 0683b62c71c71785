#include <doctest.h>

#include <random>
#include <sstream>

#include "loopfact/errors.hpp"
#include "loopfact/su2_factor.hpp"
#include "loopfact/toeplitz.hpp"

using namespace loopfact;

namespace {
ZetaCoords rand_zeta(std::mt19937_64& rng, int n, double r) {
    std::uniform_real_distribution<double> u(-r, r);
    ZetaCoords z;
    for (int i = 0; i < n; ++i) z.values.emplace_back(u(rng), u(rng));
    return z;
}
}  // namespace

TEST_CASE("b_matrix layout") {
    CHECK(b_matrix({}).matrix.rows() == 0);
    CHECK(det_one_plus_bbstar({}) == 1.0);

    cplx c(2.0, -3.0);
    FiniteSection one = b_matrix({c});
    CHECK(one.matrix(0, 0) == c);

    std::vector<cplx> x{cplx(1, 0), cplx(2, 0), cplx(3, 0)};
    Eigen::MatrixXcd b = b_matrix(x).matrix;
    CHECK(b(0, 0) == x[2]);
    CHECK(b(1, 0) == x[1]);
    CHECK(b(1, 1) == x[2]);
    CHECK(b(2, 0) == x[0]);
    CHECK(b(2, 1) == x[1]);
    CHECK(b(2, 2) == x[2]);
    CHECK(b(0, 1) == cplx(0.0));
    CHECK(b(0, 2) == cplx(0.0));
    CHECK(b(1, 2) == cplx(0.0));

    // x = zeta_to_x((1, 0)) = z^{-1}: det(1 + B B^H) = 2 = prod (1+|zeta_j|^2)^j
    CHECK(det_one_plus_bbstar({cplx(1.0), cplx(0.0)}) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("scalar hankel block") {
    FiniteSection zero = hankel_block(LaurentPoly(cplx(5.0)), 3);
    CHECK(zero.matrix.norm() == 0.0);
    CHECK(zero.exact);

    FiniteSection single = hankel_block(LaurentPoly::monomial(-1, cplx(1.0)), 2);
    // maps z^0 to z^{-1}: one entry at (row deg -1, col deg 0)
    CHECK(single.matrix(0, 1) == cplx(1.0));
    CHECK(single.matrix.cwiseAbs().sum() == 1.0);

    FiniteSection trunc = hankel_block(LaurentPoly::monomial(-4, cplx(2.0)), 2);
    CHECK_FALSE(trunc.exact);
    CHECK(trunc.tail_bound == 2.0);
}

TEST_CASE("matrix hankel block reproduces the B matrix") {
    std::vector<cplx> xv{cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.05, -0.3)};
    const int n = 3;
    LaurentPoly x;
    for (int j = 1; j <= n; ++j) x.set_coeff(-j, xv[static_cast<size_t>(j - 1)]);
    MatrixLoop g(LaurentPoly::one(), x, {}, LaurentPoly::one());
    FiniteSection h = hankel_block(g, n);
    REQUIRE(h.matrix.rows() == 2 * n);
    Eigen::MatrixXcd b = b_matrix(xv).matrix;
    // the nonzero block sits at (e1 rows, e2 cols) and equals B transposed
    for (int m = 1; m <= n; ++m)
        for (int t = 0; t < n; ++t)
            CHECK(h.matrix(2 * (m - 1), 2 * t + 1) == b(t, m - 1));
    for (int r = 0; r < 2 * n; ++r)
        for (int c = 0; c < 2 * n; ++c)
            if (r % 2 == 1 || c % 2 == 0) CHECK(h.matrix(r, c) == cplx(0.0));
}

TEST_CASE("sigma values") {
    SigmaValues id = sigma_values(MatrixLoop::identity());
    CHECK(id.sigma0_sq == 1.0);
    CHECK(id.sigma1_sq == 1.0);
    CHECK(id.a == 1.0);

    cplx z1(0.6, -0.3);
    SigmaValues one = sigma_values(product_loop(ZetaCoords{{z1}}, PowerFamily::NegativePower));
    CHECK(one.sigma0_sq == doctest::Approx(1.0 / (1.0 + std::norm(z1))).epsilon(1e-12));
    CHECK(one.sigma1_sq == doctest::Approx(1.0).epsilon(1e-12));

    ZetaCoords z2{{cplx(0.5, 0.0), cplx(0.0, 0.25)}};
    SigmaValues two = sigma_values(product_loop(z2, PowerFamily::NegativePower));
    CHECK(two.sigma0_sq == doctest::Approx(1.0 / (1.25 * 1.0625 * 1.0625)).epsilon(1e-12));
    CHECK(two.sigma1_sq == doctest::Approx(1.0 / 1.0625).epsilon(1e-12));
    // cross-check against the scalar-coefficient determinant
    XCoords x = zeta_to_x(z2);
    CHECK(two.sigma0_sq == doctest::Approx(1.0 / det_one_plus_bbstar(x.values)).epsilon(1e-12));

    // a non-unitary symbol is rejected
    MatrixLoop bad(LaurentPoly(cplx(2.0)), {}, {}, LaurentPoly(cplx(0.5)));
    CHECK_THROWS_AS(sigma_values(bad), DomainError);
}

TEST_CASE("finite sections are window independent") {
    std::mt19937_64 rng(23);
    ZetaCoords z = rand_zeta(rng, 5, 0.9);
    MatrixLoop g = product_loop(z, PowerFamily::NegativePower);
    int w = -g.min_deg();
    auto det_at = [&g](int sec) {
        Eigen::MatrixXcd c = hankel_block(g, sec).matrix;
        return (Eigen::MatrixXcd::Identity(c.cols(), c.cols()) - c.adjoint() * c)
            .determinant()
            .real();
    };
    CHECK(std::abs(det_at(w) - det_at(w + 3)) < 1e-12);
    CHECK(std::abs(det_at(w) - det_at(w + 7)) < 1e-12);
}

TEST_CASE("determinant identity and shifts") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 25; ++t) {
        int n = 1 + static_cast<int>(rng() % 8);
        ZetaCoords z = rand_zeta(rng, n, 1.0);
        XCoords x = zeta_to_x(z);
        for (int l = 0; l < n; ++l) {
            std::vector<cplx> shifted(x.values.begin() + l, x.values.end());
            double lhs = det_one_plus_bbstar(shifted);
            double rhs = 1.0;
            for (int j = 1; j <= n - l; ++j)
                rhs *= std::pow(1.0 + std::norm(z.values[static_cast<size_t>(j + l - 1)]), j);
            CHECK(std::abs(lhs - rhs) / rhs < 1e-9);
        }
    }
}

TEST_CASE("toeplitz determinant product") {
    CHECK(toeplitz_det_product(MatrixLoop::identity()) == 1.0);

    // eta = (1) at level 0 carries exponent 0
    MatrixLoop h = product_loop(ZetaCoords{{cplx(1.0)}}, PowerFamily::PositivePower);
    CHECK(toeplitz_det_product(h) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(37);
    ZetaCoords z = rand_zeta(rng, 4, 0.8);
    MatrixLoop g = product_loop(z, PowerFamily::NegativePower);
    CHECK(toeplitz_det_product(g) ==
          doctest::Approx(sigma_values(g).sigma0_sq).epsilon(1e-11));
}

TEST_CASE("toeplitz determinant of a three-factor loop") {
    // eta = (0, 0.5), chi = 0.2 z, zeta = (0.3):
    // det(A A^H) = prod(1+|eta_j|^2)^{-j} e^{-2 sum j|chi_j|^2} prod(1+|zeta_j|^2)^{-j}
    ZetaCoords eta{{cplx(0.0), cplx(0.5)}};
    ZetaCoords zeta{{cplx(0.3)}};
    LaurentPoly chi;
    chi.set_coeff(1, cplx(0.2));
    TripleProduct tp = triple_product(eta, chi, zeta, 24);
    double expect = (1.0 / 1.25) * std::exp(-0.08) * (1.0 / 1.09);
    CHECK(tp.predicted.sigma0_sq == doctest::Approx(expect).epsilon(1e-12));
    CHECK(toeplitz_det_product(tp.loop, 1e-6) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("szego torus determinants") {
    CHECK(szego_torus(LaurentPoly{}, 8).value == doctest::Approx(1.0).epsilon(1e-12));

    LaurentPoly chi1;
    chi1.set_coeff(1, cplx(0.2));
    SzegoResult s1 = szego_torus(chi1, 16);
    CHECK(s1.value == doctest::Approx(std::exp(-0.08)).epsilon(1e-6));
    CHECK(s1.doubling_delta < 1e-8);

    LaurentPoly chi2;
    chi2.set_coeff(1, cplx(0.1));
    chi2.set_coeff(3, cplx(0.05));
    SzegoResult s2 = szego_torus(chi2, 16);
    CHECK(s2.value == doctest::Approx(std::exp(-2.0 * (0.01 + 3.0 * 0.0025))).epsilon(1e-6));

    CHECK(torus_sigma_reference(chi2) == doctest::Approx(std::exp(-0.035)).epsilon(1e-15));

    // a window too small for the torus exponential surfaces as TruncationError
    LaurentPoly chi3;
    chi3.set_coeff(1, cplx(0.4));
    CHECK_THROWS_AS(szego_torus(chi3, 2, 1e-14, 8), TruncationError);
    // an unsatisfiable doubling tolerance reaches max_n and reports the last
    // two section values
    try {
        szego_torus(chi3, 8, -1.0, 16);
        FAIL("expected non-convergence");
    } catch (const ConvergenceError& e) {
        CHECK(std::abs(e.last_value - std::exp(-0.32)) < 1e-4);
        CHECK(std::abs(e.previous_value - std::exp(-0.32)) < 1e-4);
    }
}

TEST_CASE("csv export") {
    FiniteSection b = b_matrix({cplx(1.0, 2.0), cplx(3.0, -4.0)});
    std::ostringstream os;
    b.to_csv(os);
    CHECK(os.str() == "3,-4,0,0\n1,2,3,-4\n");
}
