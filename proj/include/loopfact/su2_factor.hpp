#pragma once

#include <vector>

#include "loopfact/matrix_loop.hpp"
#include "loopfact/toeplitz.hpp"

namespace loopfact {

// Root-subgroup coordinates.  For the negative-power family values[j-1] is
// zeta_j (j = 1..n); for the positive-power family values[j] is eta_j
// (j = 0..n).
struct ZetaCoords {
    std::vector<cplx> values;
    size_t size() const { return values.size(); }
    // sum j |zeta_j|^2, the quantity controlling the infinite limit
    double weighted_energy(PowerFamily family = PowerFamily::NegativePower) const;
};

// Coefficients of the unipotent coordinate.  For the negative-power family
// values[k] is x_{k+1} of x = sum_{j>=1} x_j z^{-j}; for the positive-power
// family values[k] is y_k of y = sum_{j>=0} y_j z^{-j}.
struct XCoords {
    std::vector<cplx> values;
    size_t size() const { return values.size(); }
};

LaurentPoly x_to_laurent(const XCoords& x);   // sum x_{k+1} z^{-(k+1)}
XCoords laurent_to_x(const LaurentPoly& p);   // inverse of the above
LaurentPoly y_to_laurent(const XCoords& y);   // sum y_k z^{-k}

// x^{(n)} by the singular-part recursion
//   x^{(n+1)} = ((x^{(n)} + zeta z^{-n-1}) sum_p (conj(zeta) x^{(n)} z^{n+1})^p)_-.
XCoords zeta_to_x(const ZetaCoords& zeta);

// Independent coordinate read-off from the loop: x = (g22^{-1} g12)_- by
// power-series inversion of the (2,2) entry.  Oracle for zeta_to_x.
XCoords x_from_loop(const MatrixLoop& g, double tol = 1e-12);

// Inverse coordinate change by peeling one elementary factor at a time:
// zeta_n is the top coefficient, then
//   x^{(n-1)} = ((x^{(n)} - zeta_n z^{-n}) sum_p (-conj(zeta_n) x^{(n)} z^n)^p)_-.
// The geometric series is summed adaptively; it converges for |zeta_n| < 1
// and the sequential top-coefficient solve is used as a fallback outside
// that regime.
ZetaCoords x_to_zeta(const XCoords& x);

// Brute-force inverse: solve zeta_to_x(zeta) = x by sequential top
// coefficient extraction, x_j = zeta_j prod_{k>j}(1+|zeta_k|^2) + (terms
// free of zeta_j).  Validation oracle for x_to_zeta.
ZetaCoords x_to_zeta_bruteforce(const XCoords& x);

// Evaluates x_1 through its own recursion (products of x_1 over suffix
// windows) and checks the result against component 1 of zeta_to_x.
cplx x1_series_check(const ZetaCoords& zeta, double tol = 1e-12);

// Ordered product of elementary loops, highest index leftmost:
//   NegativePower: a(z_n)[[1, z_n z^-n],[...]] ... a(z_1)[[1, z_1 z^-1],[...]]
//   PositivePower: a(e_n)[[1, e_n z^n],[...]] ... a(e_0)[[1, e_0],[...]]
MatrixLoop product_loop(const ZetaCoords& coords, PowerFamily family);

// Coordinate bridge between the two families via the diagram automorphism:
// eta_{j-1} = -conj(zeta_j), y = z x.
XCoords y_from_eta(const ZetaCoords& eta);
ZetaCoords eta_from_y(const XCoords& y);

struct TriangularFactorization {
    MatrixLoop lower;
    double a = 1.0;
    MatrixLoop upper;
    MatrixLoop reconstruct() const;  // lower * diag(a, 1/a) * upper
};

// Triangular factorization of the SU(2) loop with lower factor
// [[1, x],[0, 1]]:
//   gamma = -((1 + C(zx) C(zx)^H)^{-1} x)^*,   delta^* = C(x) gamma,
//   1 + alpha = a^{-2} (1 - A(x) gamma),       beta = -a^{-2} A(x)(1 + delta),
// with a^2 = det(1 + C(x) C(x)^H) / det(1 + C(zx) C(zx)^H).  The operator
// inverse is a dense solve on the exactly containing section.
TriangularFactorization factor_unipotent(const XCoords& x);

// Positive-power counterpart with lower factor [[1, 0],[y, 1]]:
//   beta = -(1 + C(y)^H C(y))^{-1}(y^*),       alpha^* = C(y) beta,
//   1 + delta = a^2 (1 - A(y) beta),           gamma^* = -a^2 D(y^*)(alpha^*),
// a^2 = det(1 + C(y) C(y)^H) / det(1 + C(z^{-1}y) C(z^{-1}y)^H).
TriangularFactorization factor_h(const XCoords& y);

struct TripleProduct {
    MatrixLoop loop;          // h^{-1} e^{(chi-chi*) h_1} g
    SigmaValues predicted;    // product-formula values
    double torus_tail = 0.0;  // truncation tail bound of the torus factor
};

// Assembles the three-factor loop and the predicted matrix coefficients
//   sigma0^2 = prod (1+|eta_j|^2)^{-j} exp(-2 sum j|chi_j|^2) prod (1+|zeta_j|^2)^{-j}
//   sigma1^2 = prod (1+|eta_j|^2)^{-(j+1)} exp(...) prod (1+|zeta_{j+1}|^2)^{-j}
//   a^2      = prod (1+|zeta_j|^2) / (1+|eta_j|^2).
TripleProduct triple_product(const ZetaCoords& eta, const LaurentPoly& chi,
                             const ZetaCoords& zeta, int exp_window = 24);

// Lower factor of the triple product assembled from the constituents'
// factorizations:
//   l = u(h)^* e^{-chi* h_1} [[1, a(h)^2 P_-(y* e^{2 chi*} + x e^{2 chi})],[0,1]].
MatrixLoop l_matrix(const ZetaCoords& eta, const LaurentPoly& chi,
                    const ZetaCoords& zeta, int exp_window = 24);

// Generic triangular factorization of an (approximately) polynomial SU(2)
// loop in the big cell, by a dense least-squares Riemann-Hilbert split:
// the coefficients of l^{-1} are the unknowns of the linear system
// P_-(l^{-1} g) = 0 (plus the unipotent normalization).  Independent of the
// closed-form factorizations above; used as their oracle.
TriangularFactorization birkhoff_factor(const MatrixLoop& g, int lower_window,
                                        double* residual = nullptr);

}  // namespace loopfact
