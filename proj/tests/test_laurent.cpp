#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "loopfact/errors.hpp"
#include "loopfact/matrix_loop.hpp"

using namespace loopfact;

TEST_CASE("star examples") {
    CHECK(LaurentPoly{}.star().empty());

    LaurentPoly z = LaurentPoly::monomial(1, cplx(1.0));
    CHECK(z.star().coeff(-1) == cplx(1.0));
    CHECK(z.star().coeff(1) == cplx(0.0));

    LaurentPoly p = LaurentPoly::monomial(3, cplx(2.0, 1.0));
    CHECK(p.star().coeff(-3) == cplx(2.0, -1.0));
}

TEST_CASE("star is an involution, exactly") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        LaurentPoly p;
        for (int d = -6; d <= 6; ++d) p.set_coeff(d, cplx(u(rng), u(rng)));
        LaurentPoly q = p.star().star();
        for (int d = -6; d <= 6; ++d) CHECK(q.coeff(d) == p.coeff(d));
    }
}

TEST_CASE("hardy projections") {
    LaurentPoly p;
    p.set_coeff(-1, cplx(1.0));
    p.set_coeff(0, cplx(1.0));
    CHECK(p.singular_part().coeff(-1) == cplx(1.0));
    CHECK(p.singular_part().coeff(0) == cplx(0.0));
    CHECK(p.plus_part().coeff(0) == cplx(1.0));

    LaurentPoly holo;
    holo.set_coeff(0, cplx(2.0));
    holo.set_coeff(3, cplx(-1.0, 4.0));
    CHECK(holo.singular_part().empty());

    // x^(2) is entirely singular
    cplx z1(0.4, 0.1), z2(0.2, -0.7);
    LaurentPoly x2;
    x2.set_coeff(-1, z1 * (1.0 + std::norm(z2)));
    x2.set_coeff(-2, z2);
    CHECK(x2.singular_part().approx_equal(x2, 0.0));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 50; ++t) {
        LaurentPoly p2;
        for (int d = -6; d <= 6; ++d) p2.set_coeff(d, cplx(u(rng), u(rng)));
        LaurentPoly s = p2.plus_part() + p2.singular_part() - p2;
        CHECK(s.l1_norm() == 0.0);
    }
}

TEST_CASE("matrix loop evaluation") {
    CHECK(MatrixLoop::identity().eval(cplx(0.0, 1.0)).isApprox(Eigen::Matrix2cd::Identity()));

    Eigen::Matrix2cd s1 = weyl_s1().eval(cplx(1.0));
    CHECK(s1(0, 0) == cplx(0.0));
    CHECK(s1(0, 1) == cplx(0.0, 1.0));
    CHECK(s1(1, 0) == cplx(0.0, 1.0));

    Eigen::Matrix2cd s0 = weyl_s0().eval(cplx(-1.0));
    CHECK(std::abs(s0(0, 1) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(s0(1, 0) - cplx(0.0, -1.0)) < 1e-15);

    CHECK_THROWS_AS(MatrixLoop::identity().eval(cplx(1.5, 0.0)), DomainError);
}

TEST_CASE("elementary loops") {
    CHECK(elementary_loop(3, cplx(0.0), PowerFamily::NegativePower)
              .approx_equal(MatrixLoop::identity(), 0.0));

    MatrixLoop e = elementary_loop(1, cplx(1.0), PowerFamily::NegativePower);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(e.at(0, 0).coeff(0) - r) < 1e-15);
    CHECK(std::abs(e.at(0, 1).coeff(-1) - r) < 1e-15);
    CHECK(std::abs(e.at(1, 0).coeff(1) + r) < 1e-15);
    CHECK(std::abs(e.at(1, 1).coeff(0) - r) < 1e-15);
    CHECK((e.det_poly() - LaurentPoly::one()).l1_norm() < 1e-15);

    MatrixLoop ep = elementary_loop(0, cplx(0.0, 1.0), PowerFamily::PositivePower);
    CHECK(std::abs(ep.at(0, 1).coeff(0) - cplx(0.0, r)) < 1e-15);
    CHECK(std::abs(ep.at(1, 0).coeff(0) - cplx(0.0, r)) < 1e-15);
    CHECK(ep.unitarity_residual() < 1e-12);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int t = 0; t < 40; ++t) {
        MatrixLoop g = elementary_loop(t % 4, cplx(u(rng), u(rng)),
                                       t % 2 ? PowerFamily::NegativePower
                                             : PowerFamily::PositivePower);
        CHECK(g.unitarity_residual() < 1e-12);
    }
}

TEST_CASE("torus loop") {
    TorusLoopResult id = torus_loop(LaurentPoly{}, 8);
    CHECK(id.loop.approx_equal(MatrixLoop::identity(), 0.0));
    CHECK(id.tail_bound == 0.0);

    cplx c(0.05, 0.02);
    LaurentPoly chi;
    chi.set_coeff(1, c);
    TorusLoopResult t = torus_loop(chi, 16, 1e-12);
    // e^{c z - conj(c) z^-1}: zero mode 1 - |c|^2 + O(|c|^4), linear mode c
    CHECK(std::abs(t.loop.at(0, 0).coeff(0) - (1.0 - std::norm(c))) < 1e-5);
    CHECK(std::abs(t.loop.at(0, 0).coeff(1) - c) < 1e-4);
    CHECK(t.loop.at(0, 1).l1_norm() == 0.0);
    CHECK(t.loop.at(1, 0).l1_norm() == 0.0);
    CHECK(t.loop.unitarity_residual() < 1e-10);
    // diagonal entries are mutual inverses
    CHECK((t.loop.at(0, 0) * t.loop.at(1, 1) - LaurentPoly::one()).l1_norm() < 1e-12);

    LaurentPoly big;
    big.set_coeff(1, cplx(0.3));
    big.set_coeff(2, cplx(0.1));
    TorusLoopResult tb = torus_loop(big, 24, 1e-10);
    CHECK(tb.tail_bound < 1e-10);
    CHECK(tb.loop.unitarity_residual() < 1e-9);

    CHECK_THROWS_AS(torus_loop(big, 3, 1e-12), TruncationError);
    LaurentPoly bad;
    bad.set_coeff(0, cplx(0.5));
    CHECK_THROWS_AS(torus_loop(bad, 8), DomainError);
}

TEST_CASE("circle sampling recovers coefficients") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LaurentPoly p;
    for (int d = -5; d <= 5; ++d) p.set_coeff(d, cplx(u(rng), u(rng)));
    CircleSampling grid(16);  // 16 >= 2*5 + 1
    std::vector<cplx> vals;
    for (cplx z : grid.points) vals.push_back(p.eval(z));
    std::vector<cplx> co = grid.dft_coeffs(vals, -8);
    for (int j = 0; j < 16; ++j)
        CHECK(std::abs(co[static_cast<size_t>(j)] - p.coeff(-8 + j)) < 1e-12);
}
