#pragma once

#include <Eigen/Core>
#include <array>

#include "loopfact/laurent.hpp"

namespace loopfact {

// 2x2 matrix of Laurent polynomials: a polynomial loop into SL(2,C), in the
// cases of interest into SU(2).  Entries are stored row-major.
class MatrixLoop {
public:
    MatrixLoop() = default;
    MatrixLoop(LaurentPoly a, LaurentPoly b, LaurentPoly c, LaurentPoly d);

    static MatrixLoop identity();

    const LaurentPoly& at(int i, int j) const { return e_[static_cast<size_t>(2 * i + j)]; }
    LaurentPoly& at(int i, int j) { return e_[static_cast<size_t>(2 * i + j)]; }

    MatrixLoop operator*(const MatrixLoop& o) const;
    MatrixLoop operator+(const MatrixLoop& o) const;
    MatrixLoop operator-(const MatrixLoop& o) const;

    // Pointwise conjugate transpose: (g*)(z) = g(z)^H for |z| = 1.  For an
    // SU(2)-valued loop this is the inverse.
    MatrixLoop adjoint() const;

    LaurentPoly det_poly() const;

    // Entrywise evaluation.  Requires | |point| - 1 | <= circle_tol.
    Eigen::Matrix2cd eval(cplx point, double circle_tol = 1e-9) const;

    int min_deg() const;
    int max_deg() const;

    MatrixLoop pruned(double eps) const;

    // max over the M-th roots of unity of || g(z)^H g(z) - I ||_F.
    double unitarity_residual(int samples = 64) const;

    // max over the M-th roots of unity of || g(z) - o(z) ||_F.
    double max_distance(const MatrixLoop& o, int samples = 64) const;

    bool approx_equal(const MatrixLoop& o, double tol) const;

private:
    std::array<LaurentPoly, 4> e_{};
};

// a(zeta) = (1 + |zeta|^2)^{-1/2}, the normalization of the elementary
// SU(2) loops.
double a_factor(cplx zeta);

enum class PowerFamily { NegativePower, PositivePower };

// Elementary root-subgroup loop.
//   NegativePower: a(z) [[1, z z^-j], [-conj(z) z^j, 1]]
//   PositivePower: a(e) [[1, e z^j],  [-conj(e) z^-j, 1]]
// Determinant is exactly 1; values are unitary on |z| = 1.
MatrixLoop elementary_loop(int j, cplx zeta, PowerFamily family);

// Weyl representatives s0 = [[0, i z^-1],[i z, 0]] and s1 = [[0, i],[i, 0]].
MatrixLoop weyl_s0();
MatrixLoop weyl_s1();

// exp of a scalar Laurent polynomial by power series.  The series is summed
// until the l1 remainder bound drops below series_tol, then the result is
// truncated to [-window, window]; the l1 mass dropped plus the series
// remainder is returned as *tail_bound.
LaurentPoly exp_series(const LaurentPoly& psi, int window, double series_tol,
                       double* tail_bound);

struct TorusLoopResult {
    MatrixLoop loop;
    double tail_bound;
};

// diag(e^{chi - chi*}, e^{-(chi - chi*)}) truncated to degrees
// [-exp_window, exp_window].  chi must have degrees in [1, N].  Throws
// TruncationError when the tail bound exceeds tail_tol.
TorusLoopResult torus_loop(const LaurentPoly& chi, int exp_window,
                           double tail_tol = 1e-10);

}  // namespace loopfact
