#include <doctest.h>

#include <random>

#include "loopfact/errors.hpp"
#include "loopfact/su2_factor.hpp"
#include "loopfact/weyl.hpp"

using namespace loopfact;

namespace {
ZetaCoords rand_zeta(std::mt19937_64& rng, int n, double r) {
    std::uniform_real_distribution<double> u(-r, r);
    ZetaCoords z;
    for (int i = 0; i < n; ++i) z.values.emplace_back(u(rng), u(rng));
    return z;
}
double coords_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        cplx va = i < a.size() ? a[i] : cplx(0.0);
        cplx vb = i < b.size() ? b[i] : cplx(0.0);
        d = std::max(d, std::abs(va - vb));
    }
    return d;
}
}  // namespace

TEST_CASE("coordinate map small cases") {
    cplx z1(0.7, -0.4);
    XCoords x1 = zeta_to_x(ZetaCoords{{z1}});
    REQUIRE(x1.size() == 1);
    CHECK(x1.values[0] == z1);

    cplx z2(0.3, 0.5);
    XCoords x2 = zeta_to_x(ZetaCoords{{z1, z2}});
    CHECK(std::abs(x2.values[0] - z1 * (1.0 + std::norm(z2))) < 1e-15);
    CHECK(x2.values[1] == z2);

    cplx z3(-0.2, 0.6);
    XCoords x3 = zeta_to_x(ZetaCoords{{z1, z2, z3}});
    double w3 = 1.0 + std::norm(z3);
    CHECK(std::abs(x3.values[0] -
                   (z1 * (1.0 + std::norm(z2)) * w3 + z2 * z2 * std::conj(z3) * w3)) < 1e-15);
    CHECK(std::abs(x3.values[1] - z2 * w3) < 1e-15);
    CHECK(x3.values[2] == z3);
}

TEST_CASE("coordinate map n=4 display") {
    cplx z1(0.15, 0.25), z2(-0.3, 0.1), z3(0.2, -0.2), z4(0.05, 0.35);
    XCoords x = zeta_to_x(ZetaCoords{{z1, z2, z3, z4}});
    double w2 = 1.0 + std::norm(z2), w3 = 1.0 + std::norm(z3), w4 = 1.0 + std::norm(z4);
    cplx e1 = z1 * w2 * w3 * w4 +
              z2 * w3 * w4 * (z2 * std::conj(z3) + 2.0 * z3 * std::conj(z4)) +
              z3 * w4 * (z3 * std::conj(z4)) * (z3 * std::conj(z4));
    cplx e2 = z2 * w3 * w4 + z3 * w4 * z3 * std::conj(z4);
    cplx e3 = z3 * w4;
    CHECK(std::abs(x.values[0] - e1) < 1e-15);
    CHECK(std::abs(x.values[1] - e2) < 1e-15);
    CHECK(std::abs(x.values[2] - e3) < 1e-15);
    CHECK(x.values[3] == z4);
}

TEST_CASE("top coefficient and shift laws") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 30; ++t) {
        int n = 1 + static_cast<int>(rng() % 8);
        ZetaCoords z = rand_zeta(rng, n, 1.2);
        XCoords x = zeta_to_x(z);
        CHECK(x.values[static_cast<size_t>(n - 1)] == z.values[static_cast<size_t>(n - 1)]);
        if (n >= 2) {
            ZetaCoords suffix;
            suffix.values.assign(z.values.begin() + 1, z.values.end());
            XCoords xs = zeta_to_x(suffix);
            for (int j = 2; j <= n; ++j)
                CHECK(std::abs(x.values[static_cast<size_t>(j - 1)] -
                               xs.values[static_cast<size_t>(j - 2)]) <
                      1e-13 * (1.0 + std::abs(x.values[static_cast<size_t>(j - 1)])));
        }
    }
}

TEST_CASE("product loop") {
    CHECK(product_loop(ZetaCoords{}, PowerFamily::NegativePower)
              .approx_equal(MatrixLoop::identity(), 0.0));

    MatrixLoop g = product_loop(ZetaCoords{{cplx(1.0)}}, PowerFamily::NegativePower);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(g.at(0, 0).coeff(0) - r) < 1e-15);
    CHECK(std::abs(g.at(0, 1).coeff(-1) - r) < 1e-15);
    CHECK(std::abs(g.at(1, 0).coeff(1) + r) < 1e-15);

    std::mt19937_64 rng(5);
    ZetaCoords z = rand_zeta(rng, 5, 0.9);
    CHECK(product_loop(z, PowerFamily::NegativePower).unitarity_residual() < 1e-12);
    CHECK(product_loop(z, PowerFamily::PositivePower).unitarity_residual() < 1e-12);
}

TEST_CASE("x from loop is an oracle for the recursion") {
    CHECK(x_from_loop(MatrixLoop::identity()).size() == 0);

    cplx z1(0.8, 0.1);
    XCoords x1 = x_from_loop(product_loop(ZetaCoords{{z1}}, PowerFamily::NegativePower));
    REQUIRE(x1.size() == 1);
    CHECK(std::abs(x1.values[0] - z1) < 1e-14);

    std::mt19937_64 rng(59);
    for (int t = 0; t < 20; ++t) {
        int n = 1 + static_cast<int>(rng() % 8);
        ZetaCoords z = rand_zeta(rng, n, 0.9);
        XCoords via_recursion = zeta_to_x(z);
        XCoords via_loop = x_from_loop(product_loop(z, PowerFamily::NegativePower));
        CHECK(coords_dist(via_recursion.values, via_loop.values) < 1e-10);
    }

    // s0 has vanishing (2,2) entry at 0: outside the big cell
    CHECK_THROWS_AS(x_from_loop(weyl_s0()), DegenerateLoopError);
}

TEST_CASE("coordinate inverse") {
    CHECK(x_to_zeta(XCoords{}).size() == 0);

    // peel the n=2 display exactly
    cplx z1(0.5, -0.3), z2(0.2, 0.6);
    XCoords x = zeta_to_x(ZetaCoords{{z1, z2}});
    ZetaCoords back = x_to_zeta(x);
    CHECK(std::abs(back.values[0] - z1) < 1e-14);
    CHECK(back.values[1] == z2);

    std::mt19937_64 rng(61);
    for (int t = 0; t < 25; ++t) {
        int n = 1 + static_cast<int>(rng() % 8);
        ZetaCoords z = rand_zeta(rng, n, 0.65);
        XCoords xx = zeta_to_x(z);
        CHECK(coords_dist(x_to_zeta(xx).values, z.values) < 1e-10);
        CHECK(coords_dist(x_to_zeta_bruteforce(xx).values, z.values) < 1e-10);
        // round trip in the other direction
        CHECK(coords_dist(zeta_to_x(x_to_zeta(xx)).values, xx.values) < 1e-10);
    }
}

TEST_CASE("x1 recursion") {
    CHECK(x1_series_check(ZetaCoords{{cplx(0.4, 0.2)}}) == cplx(0.4, 0.2));

    cplx z1(0.3, -0.5), z2(0.6, 0.2);
    cplx v = x1_series_check(ZetaCoords{{z1, z2}});
    CHECK(std::abs(v - z1 * (1.0 + std::norm(z2))) < 1e-15);

    std::mt19937_64 rng(67);
    ZetaCoords z = rand_zeta(rng, 5, 0.9);
    cplx v5 = x1_series_check(z);  // throws if recursion and map disagree
    CHECK(std::abs(v5 - zeta_to_x(z).values[0]) < 1e-12);
}

TEST_CASE("unipotent factorization") {
    TriangularFactorization triv = factor_unipotent(XCoords{});
    CHECK(triv.a == 1.0);
    CHECK(triv.reconstruct().approx_equal(MatrixLoop::identity(), 0.0));

    cplx z1(0.6, -0.4);
    TriangularFactorization f1 = factor_unipotent(XCoords{{z1}});
    CHECK(f1.a * f1.a == doctest::Approx(1.0 + std::norm(z1)).epsilon(1e-14));
    CHECK((f1.upper.at(1, 0) - LaurentPoly::monomial(1, -std::conj(z1))).l1_norm() < 1e-14);
    CHECK(f1.upper.at(0, 1).l1_norm() < 1e-14);
    CHECK((f1.upper.at(0, 0) - LaurentPoly::one()).l1_norm() < 1e-14);
    CHECK((f1.upper.at(1, 1) - LaurentPoly::one()).l1_norm() < 1e-14);
    CHECK(f1.reconstruct().unitarity_residual() < 1e-14);

    std::mt19937_64 rng(71);
    for (int t = 0; t < 12; ++t) {
        int n = 1 + static_cast<int>(rng() % 6);
        XCoords x;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int j = 0; j < n; ++j) x.values.emplace_back(u(rng), u(rng));
        TriangularFactorization f = factor_unipotent(x);
        MatrixLoop g = f.reconstruct();
        CHECK(g.unitarity_residual() < 1e-9);
        // lower factor carries x itself
        CHECK((g.at(0, 1) * g.at(1, 1).star() + g.at(0, 0) * g.at(1, 0).star())
                  .singular_part()
                  .l1_norm() < 1e-9);  // rows stay orthogonal off H+
        // degree windows of the unipotent-family upper factor
        CHECK(f.upper.at(0, 0).mass_outside(0, n - 1) == 0.0);
        CHECK(f.upper.at(0, 1).mass_outside(0, std::max(0, n - 2)) == 0.0);
        CHECK(f.upper.at(1, 0).mass_outside(1, n) == 0.0);
        CHECK(f.upper.at(1, 1).mass_outside(0, n - 1) == 0.0);
        CHECK(f.upper.eval(cplx(1.0))(0, 0) != cplx(0.0));
        // u(0) is unipotent upper triangular
        CHECK(std::abs(f.upper.at(0, 0).coeff(0) - 1.0) < 1e-12);
        CHECK(std::abs(f.upper.at(1, 1).coeff(0) - 1.0) < 1e-12);
        CHECK(std::abs(f.upper.at(1, 0).coeff(0)) == 0.0);
    }
}

TEST_CASE("positive-power factorization") {
    TriangularFactorization triv = factor_h(XCoords{});
    CHECK(triv.a == 1.0);

    // single constant eta
    cplx e0(0.45, 0.2);
    ZetaCoords eta{{e0}};
    XCoords y = y_from_eta(eta);
    REQUIRE(y.size() == 1);
    CHECK(std::abs(y.values[0] + std::conj(e0)) < 1e-15);  // y_0 = -conj(eta_0)
    TriangularFactorization f = factor_h(y);
    CHECK(f.a == doctest::Approx(1.0 / std::sqrt(1.0 + std::norm(e0))).epsilon(1e-13));
    MatrixLoop h = product_loop(eta, PowerFamily::PositivePower);
    CHECK(f.reconstruct().max_distance(h) < 1e-13);

    std::mt19937_64 rng(73);
    for (int t = 0; t < 6; ++t) {
        ZetaCoords eta4 = rand_zeta(rng, 4, 0.7);
        XCoords y4 = y_from_eta(eta4);
        TriangularFactorization f4 = factor_h(y4);
        MatrixLoop h4 = product_loop(eta4, PowerFamily::PositivePower);
        CHECK(f4.reconstruct().max_distance(h4) < 1e-9);
        double aprod = 1.0;
        for (cplx v : eta4.values) aprod *= 1.0 + std::norm(v);
        CHECK(f4.a == doctest::Approx(1.0 / std::sqrt(aprod)).epsilon(1e-9));
        // eta recovered from y
        ZetaCoords back = eta_from_y(y4);
        CHECK(coords_dist(back.values, eta4.values) < 1e-10);
    }
}

TEST_CASE("triple product") {
    TripleProduct triv = triple_product(ZetaCoords{}, LaurentPoly{}, ZetaCoords{});
    CHECK(triv.loop.approx_equal(MatrixLoop::identity(), 1e-15));
    CHECK(triv.predicted.sigma0_sq == 1.0);
    CHECK(triv.predicted.sigma1_sq == 1.0);

    cplx z1(0.35, -0.15);
    TripleProduct one = triple_product(ZetaCoords{}, LaurentPoly{}, ZetaCoords{{z1}});
    CHECK(one.predicted.sigma0_sq == doctest::Approx(1.0 / (1.0 + std::norm(z1))));
    CHECK(one.predicted.sigma1_sq == doctest::Approx(1.0));

    std::mt19937_64 rng(79);
    for (int t = 0; t < 3; ++t) {
        ZetaCoords eta = rand_zeta(rng, 2, 0.5);
        ZetaCoords zeta = rand_zeta(rng, 2, 0.5);
        LaurentPoly chi;
        std::uniform_real_distribution<double> u(-0.2, 0.2);
        chi.set_coeff(1, cplx(u(rng), u(rng)));
        chi.set_coeff(2, cplx(u(rng), u(rng)));
        TripleProduct tp = triple_product(eta, chi, zeta, 24);
        CHECK(tp.torus_tail < 1e-10);
        CHECK(tp.loop.unitarity_residual() < 1e-8);
        double det = toeplitz_det_product(tp.loop, 1e-6);
        CHECK(std::abs(det - tp.predicted.sigma0_sq) < 1e-6 * tp.predicted.sigma0_sq);
        SigmaValues sv = sigma_values(tp.loop, 1e-6);
        CHECK(std::abs(sv.sigma1_sq - tp.predicted.sigma1_sq) < 1e-6 * tp.predicted.sigma1_sq);
        CHECK(std::abs(sv.a * sv.a - tp.predicted.a * tp.predicted.a) <
              1e-6 * tp.predicted.a * tp.predicted.a);
    }
}

TEST_CASE("l matrix") {
    MatrixLoop triv = l_matrix(ZetaCoords{}, LaurentPoly{}, ZetaCoords{});
    CHECK(triv.approx_equal(MatrixLoop::identity(), 1e-14));

    // chi only: diag(e^{-chi*}, e^{chi*})
    LaurentPoly chi;
    chi.set_coeff(1, cplx(0.2, 0.1));
    MatrixLoop l = l_matrix(ZetaCoords{}, chi, ZetaCoords{}, 24);
    double tail = 0.0;
    LaurentPoly e_m = exp_series(-chi.star(), 24, 1e-13, &tail);
    LaurentPoly e_p = exp_series(chi.star(), 24, 1e-13, &tail);
    CHECK(l.max_distance(MatrixLoop(e_m, {}, {}, e_p)) < 1e-12);
    CHECK(l.at(0, 1).l1_norm() < 1e-12);

    // against the dense Riemann-Hilbert splitting of the assembled loop
    std::mt19937_64 rng(83);
    for (int t = 0; t < 2; ++t) {
        ZetaCoords eta = rand_zeta(rng, 2, 0.45);
        ZetaCoords zeta = rand_zeta(rng, 2, 0.45);
        LaurentPoly c2;
        std::uniform_real_distribution<double> u(-0.15, 0.15);
        c2.set_coeff(1, cplx(u(rng), u(rng)));
        TripleProduct tp = triple_product(eta, c2, zeta, 28);
        MatrixLoop lp = l_matrix(eta, c2, zeta, 28);
        double rez = 0.0;
        TriangularFactorization bf =
            birkhoff_factor(tp.loop, std::max(4, -lp.min_deg() + 2), &rez);
        CHECK(rez < 1e-8);
        CHECK(lp.max_distance(bf.lower) < 1e-8);
        CHECK(bf.a == doctest::Approx(tp.predicted.a).epsilon(1e-7));
    }
}

TEST_CASE("birkhoff splitting of a plain product loop") {
    std::mt19937_64 rng(89);
    ZetaCoords z = rand_zeta(rng, 3, 0.8);
    MatrixLoop g = product_loop(z, PowerFamily::NegativePower);
    double rez = 0.0;
    TriangularFactorization f = birkhoff_factor(g, 4, &rez);
    CHECK(rez < 1e-12);
    // lower factor is [[1, x],[0,1]] with x = zeta_to_x
    XCoords x = zeta_to_x(z);
    CHECK((f.lower.at(0, 1) - x_to_laurent(x)).l1_norm() < 1e-10);
    CHECK(f.lower.at(1, 0).l1_norm() < 1e-10);
    CHECK(f.a == doctest::Approx(factor_unipotent(x).a).epsilon(1e-10));
    CHECK(f.reconstruct().max_distance(g) < 1e-10);
}

TEST_CASE("weighted energy diagnostic") {
    ZetaCoords z{{cplx(1.0), cplx(0.0, 2.0)}};
    CHECK(z.weighted_energy() == doctest::Approx(1.0 + 2.0 * 4.0));
    CHECK(z.weighted_energy(PowerFamily::PositivePower) == doctest::Approx(4.0));
}
