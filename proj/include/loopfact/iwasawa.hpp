#pragma once

#include "loopfact/matrix_loop.hpp"

namespace loopfact {

// Scalar loop into the open unit disk: sup |f| < 1 on the circle.
struct DiskLoop {
    explicit DiskLoop(LaurentPoly poly, int samples = 256);
    LaurentPoly f;
    double sup_bound;
};

// Solves (1 - H0 f H0 conj(f)) h = 2 on the monomial window [-N, N] by a
// dense linear solve, H0 = P_+ - P_-.  The residual of the untruncated
// equation is evaluated in exact Laurent arithmetic and its max coefficient
// modulus on the window interior |deg| <= N - 2 deg(f) is reported; a
// TruncationError suggests a larger N when it exceeds residual_tol.
LaurentPoly solve_h(const DiskLoop& f, int N, double residual_tol = 1e-6,
                    double* interior_residual = nullptr);

struct IwasawaData {
    LaurentPoly h;
    double a0 = 1.0;
    MatrixLoop l_inv_star;  // [[a, b], [c, d]], holomorphic, a(0)=d(0)=1, c(0)=0
    MatrixLoop u;           // unitary factor, g0 = l a u with l = l_inv_star^{-*}
    LaurentPoly F;          // filled by build_F
    double unitarity_residual = 0.0;
    double reconstruction_residual = 0.0;
    int grid = 0;
};

// Extracts the factorization from h:
//   conj(c) = -P_-(conj(f) h), b a0^2 = -P_+(conj(f) h),
//   conj(a) - 1 = P_-(h),      1 + d a0^2 = P_+(h),
// with a0^2 = (zero mode of h) - 1.  u is produced by the closed form
//   u = rho a0^{-1} [[den, num], [-num*, den*]],
//   num = f* + f* P_-(h) - P_-(f* h),  den = 1 + P_-(h) - f P_-(f* h),
//   rho = (1 - f conj(f))^{-1/2} pointwise,
// stored as the trigonometric interpolant on `grid` samples.  The product
// l * diag(a0, 1/a0) * u is compared with g0 pointwise; that residual and
// the unitarity residual of u are recorded.
IwasawaData recover_factors(const DiskLoop& f, const LaurentPoly& h, int grid = 128);

// F = -num*/den pointwise (the ratio u21/u11 of the unitary factor), as the
// interpolant on the data grid.  Throws DomainError if den vanishes on the
// grid.  *ratio_residual reports max |F - u21/u11| over the samples.
LaurentPoly build_F(const IwasawaData& data, const DiskLoop& f,
                    double* ratio_residual = nullptr);

}  // namespace loopfact
