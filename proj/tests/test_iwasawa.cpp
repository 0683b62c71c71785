#include <doctest.h>

#include "loopfact/errors.hpp"
#include "loopfact/iwasawa.hpp"

using namespace loopfact;

TEST_CASE("disk loop bound") {
    LaurentPoly big;
    big.set_coeff(1, cplx(0.8));
    big.set_coeff(-1, cplx(0.4));
    CHECK_THROWS_AS(DiskLoop{big}, DomainError);  // sup over circle is 1.2

    LaurentPoly ok;
    ok.set_coeff(1, cplx(0.3));
    CHECK(DiskLoop{ok}.sup_bound == doctest::Approx(0.3));
}

TEST_CASE("trivial input") {
    DiskLoop f{LaurentPoly{}};
    LaurentPoly h = solve_h(f, 8);
    CHECK((h - LaurentPoly(cplx(2.0))).l1_norm() == 0.0);
    IwasawaData data = recover_factors(f, h);
    CHECK(data.a0 == 1.0);
    CHECK(data.l_inv_star.approx_equal(MatrixLoop::identity(), 0.0));
    CHECK(data.unitarity_residual < 1e-14);
    CHECK(data.reconstruction_residual < 1e-14);
    LaurentPoly F = build_F(data, f);
    CHECK(F.l1_norm() < 1e-13);
}

TEST_CASE("constant input solves in closed form") {
    cplx c(0.35, -0.2);
    DiskLoop f{LaurentPoly(c)};
    LaurentPoly h16 = solve_h(f, 16);
    LaurentPoly h32 = solve_h(f, 32);
    double expect = 2.0 / (1.0 - std::norm(c));
    CHECK(std::abs(h16.coeff(0) - expect) < 1e-12);
    CHECK((h16 - h32).truncated(-8, 8).l1_norm() < 1e-12);

    IwasawaData data = recover_factors(f, h32);
    // nonloop model: a0^2 = (1+|Z|^2)/(1-|Z|^2) and F = -Z
    CHECK(data.a0 * data.a0 ==
          doctest::Approx((1.0 + std::norm(c)) / (1.0 - std::norm(c))).epsilon(1e-12));
    CHECK(data.unitarity_residual < 1e-12);
    CHECK(data.reconstruction_residual < 1e-12);
    double rez = 0.0;
    LaurentPoly F = build_F(data, f, &rez);
    CHECK(rez < 1e-12);
    CHECK(std::abs(F.eval(cplx(1.0)) + c) < 1e-11);
    // u matches the Gram-Schmidt matrix (1+|c|^2)^{-1/2} [[1, cbar],[-c, 1]]
    double s = 1.0 / std::sqrt(1.0 + std::norm(c));
    Eigen::Matrix2cd u = data.u.eval(cplx(1.0));
    CHECK(std::abs(u(0, 0) - s) < 1e-11);
    CHECK(std::abs(u(0, 1) - s * std::conj(c)) < 1e-11);
    CHECK(std::abs(u(1, 0) + s * c) < 1e-11);
}

TEST_CASE("single mode input") {
    LaurentPoly p;
    p.set_coeff(1, cplx(0.4));
    DiskLoop f{p};
    double interior = 0.0;
    LaurentPoly h = solve_h(f, 32, 1e-6, &interior);
    CHECK(interior < 1e-10);
    // closed form for f = e z^k: h = 2/(1+|e|^2)
    CHECK(std::abs(h.coeff(0) - 2.0 / 1.16) < 1e-10);
    IwasawaData data = recover_factors(f, h);
    CHECK(data.a0 * data.a0 == doctest::Approx(0.84 / 1.16).epsilon(1e-10));
    CHECK(data.unitarity_residual < 1e-6);
    CHECK(data.reconstruction_residual < 1e-6);
    double rez = 0.0;
    build_F(data, f, &rez);
    CHECK(rez < 1e-6);
}

TEST_CASE("two sided input") {
    LaurentPoly p;
    p.set_coeff(1, cplx(0.3));
    p.set_coeff(-1, cplx(0.2));
    DiskLoop f{p};
    LaurentPoly h = solve_h(f, 32);
    IwasawaData data = recover_factors(f, h);
    // extracted entries are holomorphic with the right normalization
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(data.l_inv_star.at(i, j).mass_outside(0, 1 << 20) < 1e-6);
    CHECK(std::abs(data.l_inv_star.at(0, 0).coeff(0) - 1.0) < 1e-12);
    CHECK(std::abs(data.l_inv_star.at(1, 1).coeff(0) - 1.0) < 1e-12);
    CHECK(std::abs(data.l_inv_star.at(1, 0).coeff(0)) < 1e-12);
    CHECK(data.unitarity_residual < 1e-6);
    CHECK(data.reconstruction_residual < 1e-6);
}

TEST_CASE("window doubling stability") {
    LaurentPoly p;
    p.set_coeff(1, cplx(0.25, 0.1));
    p.set_coeff(-2, cplx(0.15, -0.05));
    DiskLoop f{p};
    LaurentPoly h32 = solve_h(f, 32);
    LaurentPoly h64 = solve_h(f, 64);
    CHECK((h32 - h64).truncated(-8, 8).linf_coeff() < 1e-8);
}

TEST_CASE("window too small") {
    LaurentPoly p;
    p.set_coeff(2, cplx(0.3));
    CHECK_THROWS_AS(solve_h(DiskLoop{p}, 4), DomainError);
}
