#include "loopfact/matrix_loop.hpp"

#include <algorithm>
#include <cmath>

#include "loopfact/errors.hpp"

namespace loopfact {

MatrixLoop::MatrixLoop(LaurentPoly a, LaurentPoly b, LaurentPoly c, LaurentPoly d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

MatrixLoop MatrixLoop::identity() {
    return MatrixLoop(LaurentPoly::one(), {}, {}, LaurentPoly::one());
}

MatrixLoop MatrixLoop::operator*(const MatrixLoop& o) const {
    MatrixLoop r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.at(i, j) = at(i, 0) * o.at(0, j) + at(i, 1) * o.at(1, j);
    return r;
}

MatrixLoop MatrixLoop::operator+(const MatrixLoop& o) const {
    MatrixLoop r;
    for (int i = 0; i < 4; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

MatrixLoop MatrixLoop::operator-(const MatrixLoop& o) const {
    MatrixLoop r;
    for (int i = 0; i < 4; ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

MatrixLoop MatrixLoop::adjoint() const {
    return MatrixLoop(at(0, 0).star(), at(1, 0).star(), at(0, 1).star(), at(1, 1).star());
}

LaurentPoly MatrixLoop::det_poly() const {
    return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
}

Eigen::Matrix2cd MatrixLoop::eval(cplx point, double circle_tol) const {
    if (std::abs(std::abs(point) - 1.0) > circle_tol)
        throw DomainError("evaluation point is off the unit circle");
    Eigen::Matrix2cd m;
    m(0, 0) = at(0, 0).eval(point);
    m(0, 1) = at(0, 1).eval(point);
    m(1, 0) = at(1, 0).eval(point);
    m(1, 1) = at(1, 1).eval(point);
    return m;
}

int MatrixLoop::min_deg() const {
    int lo = 0;
    for (const auto& p : e_)
        if (!p.empty()) lo = std::min(lo, p.min_deg());
    return lo;
}

int MatrixLoop::max_deg() const {
    int hi = 0;
    for (const auto& p : e_)
        if (!p.empty()) hi = std::max(hi, p.max_deg());
    return hi;
}

MatrixLoop MatrixLoop::pruned(double eps) const {
    MatrixLoop r;
    for (int i = 0; i < 4; ++i) r.e_[i] = e_[i].pruned(eps);
    return r;
}

double MatrixLoop::unitarity_residual(int samples) const {
    CircleSampling grid(samples);
    double worst = 0.0;
    for (cplx z : grid.points) {
        Eigen::Matrix2cd g = eval(z);
        worst = std::max(worst, (g.adjoint() * g - Eigen::Matrix2cd::Identity()).norm());
    }
    return worst;
}

double MatrixLoop::max_distance(const MatrixLoop& o, int samples) const {
    CircleSampling grid(samples);
    double worst = 0.0;
    for (cplx z : grid.points)
        worst = std::max(worst, (eval(z) - o.eval(z)).norm());
    return worst;
}

bool MatrixLoop::approx_equal(const MatrixLoop& o, double tol) const {
    for (int i = 0; i < 4; ++i)
        if (!e_[i].approx_equal(o.e_[i], tol)) return false;
    return true;
}

double a_factor(cplx zeta) { return 1.0 / std::sqrt(1.0 + std::norm(zeta)); }

MatrixLoop elementary_loop(int j, cplx zeta, PowerFamily family) {
    const double a = a_factor(zeta);
    int dtop = (family == PowerFamily::NegativePower) ? -j : j;
    MatrixLoop m(LaurentPoly(cplx(a)), LaurentPoly::monomial(dtop, a * zeta),
                 LaurentPoly::monomial(-dtop, -a * std::conj(zeta)), LaurentPoly(cplx(a)));
    return m;
}

MatrixLoop weyl_s0() {
    return MatrixLoop({}, LaurentPoly::monomial(-1, cplx(0, 1)),
                      LaurentPoly::monomial(1, cplx(0, 1)), {});
}

MatrixLoop weyl_s1() {
    return MatrixLoop({}, LaurentPoly(cplx(0, 1)), LaurentPoly(cplx(0, 1)), {});
}

LaurentPoly exp_series(const LaurentPoly& psi, int window, double series_tol,
                       double* tail_bound) {
    // Sum psi^k / k! with the full window, then cut to [-window, window].
    // The l1 norm is submultiplicative, so the dropped series tail is
    // bounded by sum_{k>K} r^k / k! with r = l1(psi).
    const double r = psi.l1_norm();
    LaurentPoly acc = LaurentPoly::one();
    LaurentPoly term = LaurentPoly::one();
    double term_bound = 1.0;
    int k = 0;
    double remainder = std::exp(r);
    while (remainder > series_tol && k < 500) {
        ++k;
        term = term * psi * cplx(1.0 / k);
        acc = acc + term;
        term_bound *= r / k;
        // remainder <= term_bound * (r/(k+1) + r^2/((k+1)(k+2)) + ...)
        //           <= term_bound * (e^r - partial) ; use a crude safe bound
        remainder = term_bound * r / (k + 1) * std::exp(r);
    }
    double dropped = acc.mass_outside(-window, window);
    if (tail_bound) *tail_bound = dropped + remainder;
    return acc.truncated(-window, window);
}

TorusLoopResult torus_loop(const LaurentPoly& chi, int exp_window, double tail_tol) {
    if (!chi.empty() && chi.min_deg() < 1)
        throw DomainError("torus exponent must have degrees >= 1");
    LaurentPoly psi = chi - chi.star();
    double tail_top = 0.0, tail_bot = 0.0;
    LaurentPoly top = exp_series(psi, exp_window, tail_tol * 0.01, &tail_top);
    LaurentPoly bot = exp_series(-psi, exp_window, tail_tol * 0.01, &tail_bot);
    double tail = std::max(tail_top, tail_bot);
    if (tail > tail_tol)
        throw TruncationError("torus loop truncation window too small", tail);
    return {MatrixLoop(top, {}, {}, bot), tail};
}

}  // namespace loopfact
