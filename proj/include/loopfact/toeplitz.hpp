#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "loopfact/matrix_loop.hpp"

namespace loopfact {

// Basis conventions, fixed once for the whole project.
//
// ScalarMonomial: monomials z^d ordered by descending degree.
// InterleavedVector: the ordered basis ..., e1 z^{j+1}, e2 z^{j+1},
//   e1 z^j, e2 z^j, ... (descending degree, e1 before e2 within a degree).
//
// A FiniteSection holds the matrix of an operator between two such ordered
// bases: rows run over [row_lo, row_hi] descending, columns over
// [col_lo, col_hi] descending.  Index map for the interleaved tag:
// position p <-> degree hi - p/2, component p%2.
enum class BasisTag { ScalarMonomial, InterleavedVector };

struct FiniteSection {
    Eigen::MatrixXcd matrix;
    BasisTag tag = BasisTag::ScalarMonomial;
    int row_hi = 0, row_lo = 0;
    int col_hi = 0, col_lo = 0;
    bool exact = true;        // section captures every nonzero entry
    double tail_bound = 0.0;  // l1 mass of symbol coefficients left outside

    int rows_per_degree() const { return tag == BasisTag::InterleavedVector ? 2 : 1; }
    void to_csv(std::ostream& os) const;  // row-major, re/im pairs
};

// Lower-triangular Toeplitz matrix with x_n on the diagonal and x_{n-k} on
// the k-th subdiagonal; x holds (x_1, ..., x_n).  n = 0 gives the empty
// matrix (its determinant is 1 by convention).
FiniteSection b_matrix(const std::vector<cplx>& x);

// det(1 + B B^H) for the same data, the workhorse of the integral checks.
double det_one_plus_bbstar(const std::vector<cplx>& x);

// Hankel block P_- (mult by symbol) P_+ on the section with columns
// z^0..z^{sec-1} and rows z^{-1}..z^{-sec} (descending order as above).
FiniteSection hankel_block(const LaurentPoly& symbol, int sec);
FiniteSection hankel_block(const MatrixLoop& symbol, int sec);

struct SigmaValues {
    double sigma0_sq = 1.0;
    double sigma1_sq = 1.0;
    double a = 1.0;  // (sigma1_sq / sigma0_sq)^{1/2}
};

// Fundamental matrix coefficients of an SU(2)-valued polynomial loop:
// sigma0_sq = det(1 - C(g)^H C(g)) on a section exactly containing the
// finite-rank Hankel block (A^H A = 1 - C^H C by unitarity), sigma1_sq the
// same after conjugating by diag(z^{1/2}, z^{-1/2}), which shifts the
// off-diagonal entries by one degree.
SigmaValues sigma_values(const MatrixLoop& g, double unitary_tol = 1e-8);

// det(A(g) A(g)^H), computed as det(1 - C(g) C(g)^H) on an exactly
// containing section.  Equals sigma0_sq for loops in the big cell.
double toeplitz_det_product(const MatrixLoop& g, double unitary_tol = 1e-8);

struct SzegoResult {
    double value = 1.0;
    double doubling_delta = 0.0;  // |value(section) - value(2*section)|
    int section = 0;              // the final (doubled) section size
};

// |sigma_0|^2 of the torus loop diag(e^{chi-chi*}, e^{-(chi-chi*)}),
// evaluated on finite sections of doubling size until two consecutive
// values differ by less than conv_tol.  Throws ConvergenceError if max_n
// is reached without settling.
SzegoResult szego_torus(const LaurentPoly& chi, int n, double conv_tol = 1e-8,
                        int max_n = 512);

// Reference value exp(-2 sum j |chi_j|^2) the sections converge to.
double torus_sigma_reference(const LaurentPoly& chi);

}  // namespace loopfact
