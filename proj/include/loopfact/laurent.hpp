#pragma once

#include <complex>
#include <map>
#include <vector>

namespace loopfact {

using cplx = std::complex<double>;

// Scalar Laurent polynomial: a finitely supported map degree -> complex
// coefficient.  The window [min_deg, max_deg] is implied by the support;
// exact zeros are never stored.  Values are immutable in spirit: every
// operation returns a fresh polynomial.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(cplx constant);

    static LaurentPoly monomial(int deg, cplx c);
    static LaurentPoly one() { return LaurentPoly(cplx(1.0, 0.0)); }

    const std::map<int, cplx>& coeffs() const { return c_; }
    cplx coeff(int deg) const;
    void set_coeff(int deg, cplx v);
    void add_to(int deg, cplx v);

    bool empty() const { return c_.empty(); }
    int min_deg() const;  // 0 for the zero polynomial
    int max_deg() const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(cplx s) const;
    LaurentPoly operator-() const;

    // f* : coefficient at -n is the conjugate of the coefficient at n.
    // On |z| = 1 this is pointwise complex conjugation.
    LaurentPoly star() const;

    // Hardy projections: plus_part keeps degrees >= 0, singular_part keeps
    // degrees < 0.  Their sum is the identity, coefficientwise exact.
    LaurentPoly plus_part() const;
    LaurentPoly singular_part() const;

    // Multiplication by z^k.
    LaurentPoly shifted(int k) const;

    // Keep only degrees in [lo, hi].
    LaurentPoly truncated(int lo, int hi) const;

    // l1 mass of the coefficients outside [lo, hi].
    double mass_outside(int lo, int hi) const;

    cplx eval(cplx z) const;

    double l1_norm() const;
    double linf_coeff() const;  // max |coefficient|

    // Drop coefficients with |c| <= eps.
    LaurentPoly pruned(double eps) const;

    bool approx_equal(const LaurentPoly& o, double tol) const;

private:
    std::map<int, cplx> c_;
};

inline LaurentPoly operator*(cplx s, const LaurentPoly& p) { return p * s; }

// Sample grid of M-th roots of unity.  With M >= 2*D + 1, evaluation on the
// grid determines the coefficients of any loop with degrees in [-D, D];
// dft_coeffs performs that inversion (used as an internal oracle and to
// represent pointwise-defined loops on a finite window).
struct CircleSampling {
    explicit CircleSampling(int count);
    int count;
    std::vector<cplx> points;

    // Inverse DFT: coefficients on the window [lo, lo + count - 1] of the
    // trigonometric interpolant through `values`.
    std::vector<cplx> dft_coeffs(const std::vector<cplx>& values, int lo) const;
};

}  // namespace loopfact
