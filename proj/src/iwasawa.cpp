#include "loopfact/iwasawa.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "loopfact/errors.hpp"

namespace loopfact {

DiskLoop::DiskLoop(LaurentPoly poly, int samples) : f(std::move(poly)) {
    CircleSampling grid(samples);
    sup_bound = 0.0;
    for (cplx z : grid.points) sup_bound = std::max(sup_bound, std::abs(f.eval(z)));
    if (sup_bound >= 1.0)
        throw DomainError("disk loop must satisfy sup |f| < 1 (got " +
                          std::to_string(sup_bound) + ")");
}

namespace {

int f_width(const LaurentPoly& f) {
    if (f.empty()) return 0;
    return std::max(std::abs(f.min_deg()), std::abs(f.max_deg()));
}

// Dense matrix of multiplication by `s` on the monomial window [-N, N],
// rows/cols indexed by degree + N.
Eigen::MatrixXcd mult_matrix(const LaurentPoly& s, int N) {
    const int dim = 2 * N + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [d, v] : s.coeffs())
        for (int k = -N; k <= N; ++k) {
            int out = k + d;
            if (out >= -N && out <= N) m(out + N, k + N) = v;
        }
    return m;
}

LaurentPoly hilbert0(const LaurentPoly& p) {
    return p.plus_part() - p.singular_part();
}

}  // namespace

LaurentPoly solve_h(const DiskLoop& f, int N, double residual_tol,
                    double* interior_residual) {
    const int w = f_width(f.f);
    if (N < 2 * w + 1) throw DomainError("window too small for the symbol");
    const int dim = 2 * N + 1;

    Eigen::MatrixXcd mf = mult_matrix(f.f, N);
    Eigen::MatrixXcd mfc = mult_matrix(f.f.star(), N);
    Eigen::VectorXcd sign(dim);
    for (int d = -N; d <= N; ++d) sign(d + N) = d >= 0 ? 1.0 : -1.0;
    Eigen::MatrixXcd t = sign.asDiagonal() * mf * sign.asDiagonal() * mfc;
    t = Eigen::MatrixXcd::Identity(dim, dim) - t;

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    rhs(N) = 2.0;
    Eigen::VectorXcd sol = t.partialPivLu().solve(rhs);

    LaurentPoly h;
    for (int d = -N; d <= N; ++d) {
        cplx v = sol(d + N);
        if (std::abs(v) > 1e-300) h.set_coeff(d, v);
    }

    // residual of the untruncated equation, exact Laurent arithmetic
    LaurentPoly r = h - hilbert0(f.f * hilbert0(f.f.star() * h)) -
                    LaurentPoly(cplx(2.0));
    double worst = 0.0;
    const int interior = N - 2 * w;
    for (const auto& [d, v] : r.coeffs())
        if (std::abs(d) <= interior) worst = std::max(worst, std::abs(v));
    if (interior_residual) *interior_residual = worst;
    if (worst > residual_tol)
        throw TruncationError("solve_h residual too large; increase N", worst);
    return h;
}

IwasawaData recover_factors(const DiskLoop& f, const LaurentPoly& h, int grid) {
    IwasawaData out;
    out.h = h;
    out.grid = grid;

    cplx h0 = h.coeff(0);
    if (std::abs(h0.imag()) > 1e-6 * (1.0 + std::abs(h0)))
        throw DegenerateLoopError("zero mode of h is not real");
    double a0sq = h0.real() - 1.0;
    if (!(a0sq > 0.0))
        throw DegenerateLoopError("zero mode of h gives nonpositive a0^2");
    out.a0 = std::sqrt(a0sq);

    LaurentPoly fs = f.f.star();
    LaurentPoly fsh = fs * h;
    LaurentPoly a = LaurentPoly::one() + h.singular_part().star();
    LaurentPoly b = -fsh.plus_part() * cplx(1.0 / a0sq);
    LaurentPoly c = -fsh.singular_part().star();
    LaurentPoly d = (h.plus_part() - LaurentPoly::one()) * cplx(1.0 / a0sq);
    out.l_inv_star = MatrixLoop(a, b, c, d);

    // closed-form unitary factor
    LaurentPoly pmh = h.singular_part();
    LaurentPoly pmfsh = fsh.singular_part();
    LaurentPoly num = fs + fs * pmh - pmfsh;
    LaurentPoly den = LaurentPoly::one() + pmh - f.f * pmfsh;

    CircleSampling gs(grid);
    std::vector<cplx> u11(gs.points.size()), u12(gs.points.size()),
        u21(gs.points.size()), u22(gs.points.size());
    double urez = 0.0, rrez = 0.0;
    for (size_t k = 0; k < gs.points.size(); ++k) {
        cplx z = gs.points[k];
        cplx fz = f.f.eval(z);
        double rho = 1.0 / std::sqrt(1.0 - std::norm(fz));
        cplx nz = num.eval(z), dz = den.eval(z);
        Eigen::Matrix2cd u;
        u << dz, nz, -std::conj(nz), std::conj(dz);
        u *= rho / out.a0;
        u11[k] = u(0, 0);
        u12[k] = u(0, 1);
        u21[k] = u(1, 0);
        u22[k] = u(1, 1);
        urez = std::max(urez,
                        (u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm());

        // l a u vs g0, pointwise
        Eigen::Matrix2cd L_inv_star = out.l_inv_star.eval(z);
        Eigen::Matrix2cd l = L_inv_star.adjoint().inverse();
        Eigen::Matrix2cd adiag = Eigen::Matrix2cd::Zero();
        adiag(0, 0) = out.a0;
        adiag(1, 1) = 1.0 / out.a0;
        Eigen::Matrix2cd g0;
        g0 << 1.0, std::conj(fz), fz, 1.0;
        g0 *= rho;
        rrez = std::max(rrez, (l * adiag * u - g0).norm());
    }
    out.unitarity_residual = urez;
    out.reconstruction_residual = rrez;

    int half = grid / 2;
    MatrixLoop uloop;
    auto interp = [&](const std::vector<cplx>& vals) {
        std::vector<cplx> co = gs.dft_coeffs(vals, -half);
        LaurentPoly p;
        for (int j = 0; j < grid; ++j) {
            cplx v = co[static_cast<size_t>(j)];
            if (std::abs(v) > 1e-14) p.set_coeff(-half + j, v);
        }
        return p;
    };
    uloop.at(0, 0) = interp(u11);
    uloop.at(0, 1) = interp(u12);
    uloop.at(1, 0) = interp(u21);
    uloop.at(1, 1) = interp(u22);
    out.u = uloop;
    return out;
}

LaurentPoly build_F(const IwasawaData& data, const DiskLoop& f,
                    double* ratio_residual) {
    LaurentPoly fs = f.f.star();
    LaurentPoly fsh = fs * data.h;
    LaurentPoly pmh = data.h.singular_part();
    LaurentPoly pmfsh = fsh.singular_part();
    LaurentPoly num = fs + fs * pmh - pmfsh;
    LaurentPoly den = LaurentPoly::one() + pmh - f.f * pmfsh;

    CircleSampling gs(data.grid);
    std::vector<cplx> vals(gs.points.size());
    double rez = 0.0;
    for (size_t k = 0; k < gs.points.size(); ++k) {
        cplx z = gs.points[k];
        cplx dz = den.eval(z);
        if (std::abs(dz) < 1e-12)
            throw DomainError("denominator loop vanishes on the sample grid");
        vals[k] = -std::conj(num.eval(z)) / dz;
        cplx ratio = data.u.at(1, 0).eval(z) / data.u.at(0, 0).eval(z);
        rez = std::max(rez, std::abs(vals[k] - ratio));
    }
    if (ratio_residual) *ratio_residual = rez;

    int half = data.grid / 2;
    std::vector<cplx> co = gs.dft_coeffs(vals, -half);
    LaurentPoly F;
    for (int j = 0; j < data.grid; ++j) {
        cplx v = co[static_cast<size_t>(j)];
        if (std::abs(v) > 1e-14) F.set_coeff(-half + j, v);
    }
    return F;
}

}  // namespace loopfact
