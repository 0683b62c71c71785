#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopfact/matrix_loop.hpp"

namespace loopfact {

// Affine sl2 coroot a*h1 + b*c, stored as the integer pair (a, b).
// Pairings against this lattice:
//   alpha0 = -2a, alpha1 = 2a, Lambda0 = b, Lambda1 = a + b, delta = a + 2b.
// The simple coroots are h1 = (1, 0) and h0 = (-1, 1); the derivation plays
// no role in any implemented pairing and is excluded from the lattice.
struct AffineCoroot {
    std::int64_t h1 = 0;
    std::int64_t c = 0;
    bool operator==(const AffineCoroot&) const = default;
};

inline AffineCoroot coroot_h0() { return {-1, 1}; }
inline AffineCoroot coroot_h1() { return {1, 0}; }

std::int64_t pair_alpha(int i, AffineCoroot h);    // alpha_i(h)
std::int64_t pair_lambda(int i, AffineCoroot h);   // Lambda_i(h)
std::int64_t pair_delta(AffineCoroot h);           // (Lambda0 + Lambda1)(h)

// Simple reflection s_i(h) = h - alpha_i(h) h_i.
AffineCoroot reflect(int i, AffineCoroot h);

// Integral functional on the coroot lattice, stored by its values on
// (h1, c):  lambda(a*h1 + b*c) = on_h1 * a + on_c * b.
struct Weight {
    std::int64_t on_h1 = 0;
    std::int64_t on_c = 0;
    std::int64_t operator()(AffineCoroot h) const { return on_h1 * h.h1 + on_c * h.c; }
};

inline Weight minus_Lambda0() { return {0, -1}; }
inline Weight minus_Lambda1() { return {-1, -1}; }

// Word in the generators {s0, s1}.  letters[j] is the (j+1)-th reflection
// r_{j+1} of the factorization w = r_n ... r_1; the affine sl2 Weyl group is
// infinite dihedral, so the word is reduced iff the letters alternate.
struct AffineWord {
    std::vector<int> letters;
    static AffineWord alternating(int first_letter, int length);
    bool reduced() const;
    size_t size() const { return letters.size(); }
};

// Inversion coroots h_{tau_j} = w_{j-1}^{-1}(h_{gamma_j}) for a reduced word.
std::vector<AffineCoroot> inversion_coroots(const AffineWord& word);

// lambda_j = -lambda(h_{tau_j}).  Requires lambda antidominant and the word
// reduced; throws DomainError if some lambda_j < 0.  A zero exponent is
// legal and occurs exactly when the word is not minimal modulo the
// stabilizer of lambda.
std::vector<std::int64_t> exponents(Weight lambda, const AffineWord& word);

// Exponents of the cell Haar density, computed by both closed forms:
//   delta(h_{tau_j}) - 1   and   -sum_{i<j} gamma_i(w_{i-1}(h_{tau_j})).
// The two are asserted equal (exact integers) before returning.
std::vector<std::int64_t> haar_exponents(const AffineWord& word);

// Product of the loop representatives of the letters, multiplied in the
// order written (letters[0] leftmost).
MatrixLoop weyl_representative(const AffineWord& word);

// Outer automorphism swapping the simple roots:
// [[a, b], [c, d]] -> [[d, c z^-1], [b z, a]].  Involutive on loops.
MatrixLoop diagram_automorphism(const MatrixLoop& g);

// Dimension and unipotent coordinate window of the Schubert cell attached
// to a reduced word, specialized to the two alternating families.
struct CellCoordinates {
    int dimension = 0;
    int entry_row = 0, entry_col = 0;  // which unipotent entry carries x
    int deg_lo = 0, deg_hi = 0;        // degree window of that entry
    std::string text;
};
CellCoordinates cell_dimension_and_coords(const AffineWord& word);

}  // namespace loopfact
