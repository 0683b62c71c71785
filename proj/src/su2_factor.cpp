#include "loopfact/su2_factor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "loopfact/errors.hpp"

namespace loopfact {

double ZetaCoords::weighted_energy(PowerFamily family) const {
    double s = 0.0;
    for (size_t k = 0; k < values.size(); ++k) {
        double j = (family == PowerFamily::NegativePower) ? double(k + 1) : double(k);
        s += j * std::norm(values[k]);
    }
    return s;
}

LaurentPoly x_to_laurent(const XCoords& x) {
    LaurentPoly p;
    for (size_t k = 0; k < x.values.size(); ++k)
        p.set_coeff(-static_cast<int>(k) - 1, x.values[k]);
    return p;
}

XCoords laurent_to_x(const LaurentPoly& p) {
    XCoords x;
    if (p.empty()) return x;
    if (p.max_deg() > -1) throw DomainError("x coordinate must have degrees <= -1");
    int n = -p.min_deg();
    x.values.resize(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) x.values[static_cast<size_t>(j - 1)] = p.coeff(-j);
    return x;
}

LaurentPoly y_to_laurent(const XCoords& y) {
    LaurentPoly p;
    for (size_t k = 0; k < y.values.size(); ++k)
        p.set_coeff(-static_cast<int>(k), y.values[k]);
    return p;
}

XCoords zeta_to_x(const ZetaCoords& zeta) {
    LaurentPoly x;  // x^{(0)} = 0
    for (size_t m1 = 1; m1 <= zeta.values.size(); ++m1) {
        const int m = static_cast<int>(m1);
        const cplx c = zeta.values[m1 - 1];
        LaurentPoly factor = x + LaurentPoly::monomial(-m, c);
        LaurentPoly t = x.shifted(m) * std::conj(c);  // degrees in [1, m-1]
        LaurentPoly series = LaurentPoly::one();
        LaurentPoly pw = LaurentPoly::one();
        for (int p = 1; p < m; ++p) {
            pw = (pw * t).truncated(1, m - 1);
            if (pw.empty()) break;
            series = series + pw;
        }
        x = (factor * series).singular_part();
    }
    XCoords out;
    int n = static_cast<int>(zeta.values.size());
    out.values.resize(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) out.values[static_cast<size_t>(j - 1)] = x.coeff(-j);
    return out;
}

XCoords x_from_loop(const MatrixLoop& g, double tol) {
    const LaurentPoly& beta = g.at(0, 1);
    const LaurentPoly& delta = g.at(1, 1);
    if (delta.mass_outside(0, delta.max_deg()) > tol)
        throw DomainError("(2,2) entry is not holomorphic");
    cplx d0 = delta.coeff(0);
    if (std::abs(d0) < tol)
        throw DegenerateLoopError("loop outside the big cell: (2,2) entry vanishes at 0");
    if (beta.empty() || beta.min_deg() >= 0) return XCoords{};
    int need = -beta.min_deg() - 1;  // inverse needed up to degree `need`
    LaurentPoly u = delta * (cplx(1.0) / d0) - LaurentPoly::one();
    u = u.truncated(1, need);
    LaurentPoly inv = LaurentPoly::one();
    LaurentPoly pw = LaurentPoly::one();
    for (int p = 1; p <= need; ++p) {
        pw = (pw * (-u)).truncated(1, need);
        if (pw.empty()) break;
        inv = inv + pw;
    }
    inv = inv * (cplx(1.0) / d0);
    LaurentPoly x = (inv * beta).singular_part();
    return laurent_to_x(x);
}

ZetaCoords x_to_zeta(const XCoords& x) {
    const int n = static_cast<int>(x.values.size());
    ZetaCoords out;
    out.values.resize(static_cast<size_t>(n));
    LaurentPoly poly = x_to_laurent(x);
    for (int m = n; m >= 1; --m) {
        cplx c = poly.coeff(-m);
        out.values[static_cast<size_t>(m - 1)] = c;
        if (m == 1) break;
        LaurentPoly base = poly - LaurentPoly::monomial(-m, c);
        LaurentPoly t = poly.shifted(m) * (-std::conj(c));  // degrees in [0, m-1]
        t = t.truncated(0, m - 2);
        LaurentPoly series = LaurentPoly::one();
        LaurentPoly pw = LaurentPoly::one();
        bool converged = false;
        for (int p = 1; p <= 400; ++p) {
            pw = (pw * t).truncated(0, m - 2);
            double inc = pw.l1_norm();
            if (inc < 1e-16 * (1.0 + series.l1_norm())) {
                converged = true;
                break;
            }
            series = series + pw;
        }
        if (!converged) return x_to_zeta_bruteforce(x);
        poly = (base * series).singular_part();
    }
    return out;
}

ZetaCoords x_to_zeta_bruteforce(const XCoords& x) {
    const int n = static_cast<int>(x.values.size());
    ZetaCoords out;
    out.values.resize(static_cast<size_t>(n));
    for (int j = n; j >= 1; --j) {
        // x_j = zeta_j prod_{k>j}(1+|zeta_k|^2) + x_1(0, zeta_{j+1}, ...)
        double denom = 1.0;
        for (int k = j + 1; k <= n; ++k) denom *= 1.0 + std::norm(out.values[static_cast<size_t>(k - 1)]);
        ZetaCoords suffix;
        suffix.values.push_back(cplx(0.0));
        for (int k = j + 1; k <= n; ++k) suffix.values.push_back(out.values[static_cast<size_t>(k - 1)]);
        cplx rest = zeta_to_x(suffix).values[0];
        out.values[static_cast<size_t>(j - 1)] = (x.values[static_cast<size_t>(j - 1)] - rest) / denom;
    }
    return out;
}

namespace {

// Sum over ordered tuples (l_1..l_parts), each in [lo, hi], with
// sum l_k = target, of the product prod_k vals[l_k].
cplx tuple_sum(const std::vector<cplx>& vals, int lo, int hi, int parts, int target) {
    if (parts == 0) return target == 0 ? cplx(1.0) : cplx(0.0);
    cplx acc(0.0);
    for (int l = lo; l <= hi; ++l) {
        int rem = target - l;
        if (rem < (parts - 1) * lo || rem > (parts - 1) * hi) continue;
        acc += vals[static_cast<size_t>(l)] * tuple_sum(vals, lo, hi, parts - 1, rem);
    }
    return acc;
}

}  // namespace

cplx x1_series_check(const ZetaCoords& zeta, double tol) {
    const int n = static_cast<int>(zeta.values.size());
    if (n == 0) return cplx(0.0);
    // T[i][m] = x_1(zeta_i, ..., zeta_m), 1-based indices.
    std::vector<std::vector<cplx>> T(static_cast<size_t>(n + 1),
                                     std::vector<cplx>(static_cast<size_t>(n + 1)));
    for (int i = 1; i <= n; ++i) T[static_cast<size_t>(i)][static_cast<size_t>(i)] = zeta.values[static_cast<size_t>(i - 1)];
    for (int m = 1; m < n; ++m) {
        const cplx znext = zeta.values[static_cast<size_t>(m)];
        const double w = 1.0 + std::norm(znext);
        std::vector<cplx> vals(static_cast<size_t>(m + 1));
        for (int l = 1; l <= m; ++l) vals[static_cast<size_t>(l)] = T[static_cast<size_t>(l)][static_cast<size_t>(m)];
        for (int i = 1; i <= m; ++i) {
            const int L = m - i + 1;  // window length before appending
            cplx acc(0.0);
            cplx zb(1.0);
            for (int p = 0; p <= L - 1; ++p) {
                int target = p * (L + 1) + 1 + (p + 1) * (i - 1);
                acc += zb * tuple_sum(vals, i, m, p + 1, target);
                zb *= std::conj(znext);
            }
            T[static_cast<size_t>(i)][static_cast<size_t>(m + 1)] = w * acc;
        }
    }
    cplx via_recursion = T[1][static_cast<size_t>(n)];
    cplx via_map = zeta_to_x(zeta).values[0];
    if (std::abs(via_recursion - via_map) > tol * (1.0 + std::abs(via_map)))
        throw std::logic_error("x_1 recursion disagrees with the coordinate map");
    return via_recursion;
}

MatrixLoop product_loop(const ZetaCoords& coords, PowerFamily family) {
    MatrixLoop m = MatrixLoop::identity();
    const int n = static_cast<int>(coords.values.size());
    if (family == PowerFamily::NegativePower) {
        for (int j = n; j >= 1; --j)
            m = m * elementary_loop(j, coords.values[static_cast<size_t>(j - 1)], family);
    } else {
        for (int j = n - 1; j >= 0; --j)
            m = m * elementary_loop(j, coords.values[static_cast<size_t>(j)], family);
    }
    return m;
}

XCoords y_from_eta(const ZetaCoords& eta) {
    ZetaCoords z;
    z.values.reserve(eta.values.size());
    for (cplx e : eta.values) z.values.push_back(-std::conj(e));
    XCoords x = zeta_to_x(z);
    return XCoords{x.values};  // y_k = x_{k+1}: same vector, shifted reading
}

ZetaCoords eta_from_y(const XCoords& y) {
    ZetaCoords z = x_to_zeta(XCoords{y.values});
    ZetaCoords eta;
    eta.values.reserve(z.values.size());
    for (cplx v : z.values) eta.values.push_back(-std::conj(v));
    return eta;
}

MatrixLoop TriangularFactorization::reconstruct() const {
    MatrixLoop d(LaurentPoly(cplx(a)), {}, {}, LaurentPoly(cplx(1.0 / a)));
    return lower * d * upper;
}

namespace {

// Gram matrix of the scalar Hankel block on the singular side:
// G(m, m') = sum_{k>=0} S[m+k] conj(S[m'+k]), 1 <= m, m' <= dim,
// where S[t] is the symbol coefficient at degree -t (S[t] = 0 past the end).
Eigen::MatrixXcd hankel_gram(const std::vector<cplx>& S, int dim) {
    auto at = [&S](int t) -> cplx {
        return (t >= 1 && t < static_cast<int>(S.size())) ? S[static_cast<size_t>(t)] : cplx(0.0);
    };
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    int top = static_cast<int>(S.size());
    for (int m = 1; m <= dim; ++m)
        for (int mp = 1; mp <= dim; ++mp) {
            cplx acc(0.0);
            for (int k = 0; m + k < top && mp + k < top; ++k)
                acc += at(m + k) * std::conj(at(mp + k));
            g(m - 1, mp - 1) = acc;
        }
    return g;
}

double det_one_plus(const Eigen::MatrixXcd& g) {
    if (g.rows() == 0) return 1.0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(g.rows(), g.cols()) + g;
    return m.determinant().real();
}

}  // namespace

TriangularFactorization factor_unipotent(const XCoords& x) {
    const int n = static_cast<int>(x.values.size());
    TriangularFactorization f;
    f.lower = MatrixLoop::identity();
    f.upper = MatrixLoop::identity();
    if (n == 0) return f;

    LaurentPoly xpoly = x_to_laurent(x);
    f.lower = MatrixLoop(LaurentPoly::one(), xpoly, {}, LaurentPoly::one());

    // S_x[t] = x_t, S_zx[t] = x_{t+1}
    std::vector<cplx> Sx(static_cast<size_t>(n + 1), cplx(0.0));
    std::vector<cplx> Szx(static_cast<size_t>(n + 1), cplx(0.0));
    for (int t = 1; t <= n; ++t) Sx[static_cast<size_t>(t)] = x.values[static_cast<size_t>(t - 1)];
    for (int t = 1; t <= n - 1; ++t) Szx[static_cast<size_t>(t)] = x.values[static_cast<size_t>(t)];

    Eigen::MatrixXcd gram_zx = hankel_gram(Szx, n);
    double det0 = det_one_plus(hankel_gram(Sx, n));
    double det1 = det_one_plus(gram_zx);
    if (!(det0 > 0.0) || !(det1 > 0.0))
        throw DegenerateLoopError("Hankel determinant not positive");
    f.a = std::sqrt(det0 / det1);

    // (1 + C(zx) C(zx)^H) gamma^* = -x on the section z^{-1}..z^{-n}
    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(n, n) + gram_zx;
    Eigen::VectorXcd rhs(n);
    for (int m = 1; m <= n; ++m) rhs(m - 1) = -x.values[static_cast<size_t>(m - 1)];
    Eigen::VectorXcd v = lhs.partialPivLu().solve(rhs);

    LaurentPoly gamma;
    for (int m = 1; m <= n; ++m) gamma.set_coeff(m, std::conj(v(m - 1)));

    LaurentPoly xg = xpoly * gamma;
    LaurentPoly delta = xg.singular_part().star();
    const double a2 = f.a * f.a;
    LaurentPoly one_plus_alpha = (LaurentPoly::one() - xg.plus_part()) * cplx(1.0 / a2);
    cplx alpha0 = one_plus_alpha.coeff(0) - 1.0;
    if (std::abs(alpha0) > 1e-8 * (1.0 + a2))
        throw DegenerateLoopError("constant term of alpha did not cancel");
    one_plus_alpha.set_coeff(0, cplx(1.0));
    LaurentPoly beta = -(xpoly * (LaurentPoly::one() + delta)).plus_part() * cplx(1.0 / a2);

    f.upper = MatrixLoop(one_plus_alpha, beta, gamma, LaurentPoly::one() + delta);
    return f;
}

TriangularFactorization factor_h(const XCoords& y) {
    const int K = static_cast<int>(y.values.size());
    TriangularFactorization f;
    f.lower = MatrixLoop::identity();
    f.upper = MatrixLoop::identity();
    if (K == 0) return f;

    LaurentPoly ypoly = y_to_laurent(y);
    f.lower = MatrixLoop(LaurentPoly::one(), {}, ypoly, LaurentPoly::one());

    auto yv = [&y, K](int t) -> cplx {
        return (t >= 0 && t < K) ? y.values[static_cast<size_t>(t)] : cplx(0.0);
    };

    // dets: |sigma_0|^{-2} = det(1 + C(y) C(y)^H), |sigma_1|^{-2} with z^{-1} y
    std::vector<cplx> Sy(static_cast<size_t>(K), cplx(0.0));
    for (int t = 1; t < K; ++t) Sy[static_cast<size_t>(t)] = yv(t);
    std::vector<cplx> Szy(static_cast<size_t>(K + 1), cplx(0.0));
    for (int t = 1; t <= K; ++t) Szy[static_cast<size_t>(t)] = yv(t - 1);
    double det0inv = det_one_plus(hankel_gram(Sy, std::max(0, K - 1)));
    double det1inv = det_one_plus(hankel_gram(Szy, K));
    if (!(det0inv > 0.0) || !(det1inv > 0.0))
        throw DegenerateLoopError("Hankel determinant not positive");
    const double a2 = det0inv / det1inv;
    f.a = std::sqrt(a2);

    // (1 + C(y)^H C(y)) beta = -y^* on the section z^0..z^{K-1}
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(K, K);
    for (int k = 0; k < K; ++k)
        for (int kp = 0; kp < K; ++kp) {
            cplx acc(0.0);
            for (int m = 1; m + std::max(k, kp) < K; ++m)
                acc += std::conj(yv(m + k)) * yv(m + kp);
            q(k, kp) = acc;
        }
    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(K, K) + q;
    Eigen::VectorXcd rhs(K);
    for (int k = 0; k < K; ++k) rhs(k) = -std::conj(yv(k));
    Eigen::VectorXcd w = lhs.partialPivLu().solve(rhs);

    LaurentPoly beta;
    for (int k = 0; k < K; ++k) beta.set_coeff(k, w(k));

    LaurentPoly yb = ypoly * beta;
    LaurentPoly alpha = yb.singular_part().star();
    LaurentPoly one_plus_delta = (LaurentPoly::one() - yb.plus_part()) * cplx(a2);
    cplx delta0 = one_plus_delta.coeff(0) - 1.0;
    if (std::abs(delta0) > 1e-8 * (1.0 + a2))
        throw DegenerateLoopError("constant term of delta did not cancel");
    one_plus_delta.set_coeff(0, cplx(1.0));
    LaurentPoly gamma =
        (-(ypoly.star() * alpha.star()).singular_part() * cplx(a2)).star();

    f.upper =
        MatrixLoop(LaurentPoly::one() + alpha, beta, gamma, one_plus_delta);
    return f;
}

TripleProduct triple_product(const ZetaCoords& eta, const LaurentPoly& chi,
                             const ZetaCoords& zeta, int exp_window) {
    TripleProduct tp;
    MatrixLoop h = product_loop(eta, PowerFamily::PositivePower);
    TorusLoopResult torus = torus_loop(chi, exp_window);
    MatrixLoop g = product_loop(zeta, PowerFamily::NegativePower);
    tp.loop = h.adjoint() * torus.loop * g;
    tp.torus_tail = torus.tail_bound;

    double e = torus_sigma_reference(chi);
    double s0 = e, s1 = e;
    for (size_t k = 0; k < eta.values.size(); ++k) {
        double w = 1.0 + std::norm(eta.values[k]);
        s0 *= std::pow(w, -static_cast<double>(k));
        s1 *= std::pow(w, -static_cast<double>(k + 1));
    }
    for (size_t j = 1; j <= zeta.values.size(); ++j) {
        double w = 1.0 + std::norm(zeta.values[j - 1]);
        s0 *= std::pow(w, -static_cast<double>(j));
        if (j >= 2) s1 *= std::pow(w, -static_cast<double>(j - 1));
    }
    tp.predicted.sigma0_sq = s0;
    tp.predicted.sigma1_sq = s1;
    tp.predicted.a = std::sqrt(s1 / s0);
    return tp;
}

MatrixLoop l_matrix(const ZetaCoords& eta, const LaurentPoly& chi,
                    const ZetaCoords& zeta, int exp_window) {
    XCoords y = y_from_eta(eta);
    TriangularFactorization fh = factor_h(y);
    MatrixLoop l_hinv = fh.upper.adjoint();  // l(h^{-1}) = u(h)^*
    const double ah2 = fh.a * fh.a;

    LaurentPoly chi_star = chi.star();
    double tail = 0.0;
    LaurentPoly e_mcs = exp_series(-chi_star, exp_window, 1e-13, &tail);
    LaurentPoly e_pcs = exp_series(chi_star, exp_window, 1e-13, &tail);
    LaurentPoly e_2cs = exp_series(chi_star * cplx(2.0), exp_window, 1e-13, &tail);
    LaurentPoly e_2c = exp_series(chi * cplx(2.0), exp_window, 1e-13, &tail);

    LaurentPoly ystar = y_to_laurent(y).star();
    LaurentPoly xpoly = x_to_laurent(zeta_to_x(zeta));
    LaurentPoly w = (ystar * e_2cs + xpoly * e_2c).singular_part() * cplx(ah2);

    MatrixLoop torus_lower(e_mcs, {}, {}, e_pcs);
    MatrixLoop shear(LaurentPoly::one(), w, {}, LaurentPoly::one());
    return l_hinv * torus_lower * shear;
}

TriangularFactorization birkhoff_factor(const MatrixLoop& g, int lower_window,
                                        double* residual) {
    const int D = lower_window;
    const int glo = g.min_deg();
    const int T = D - glo;  // negative degrees to annihilate per entry

    // Unknown coefficients of L = l^{-1}: (0,0),(0,1),(1,1) at degrees
    // -1..-D, (1,0) at degrees 0..-D.
    struct Slot {
        int i, k, deg;
    };
    std::vector<Slot> slots;
    for (int m = 1; m <= D; ++m) slots.push_back({0, 0, -m});
    for (int m = 1; m <= D; ++m) slots.push_back({0, 1, -m});
    for (int m = 0; m <= D; ++m) slots.push_back({1, 0, -m});
    for (int m = 1; m <= D; ++m) slots.push_back({1, 1, -m});
    const int nu = static_cast<int>(slots.size());

    struct Constraint {
        int i, j, deg;
    };
    std::vector<Constraint> cons;
    for (int t = 1; t <= T; ++t) {
        cons.push_back({0, 0, -t});
        cons.push_back({0, 1, -t});
        cons.push_back({1, 1, -t});
        cons.push_back({1, 0, -t});
    }
    cons.push_back({1, 0, 0});
    const int nc = static_cast<int>(cons.size());

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(nc, nu);
    Eigen::VectorXcd b(nc);
    for (int r = 0; r < nc; ++r) {
        const auto& c = cons[static_cast<size_t>(r)];
        b(r) = -g.at(c.i, c.j).coeff(c.deg);
        for (int s = 0; s < nu; ++s) {
            const auto& sl = slots[static_cast<size_t>(s)];
            if (sl.i != c.i) continue;
            A(r, s) = g.at(sl.k, c.j).coeff(c.deg - sl.deg);
        }
    }
    Eigen::VectorXcd u = A.colPivHouseholderQr().solve(b);
    if (residual) *residual = (A * u - b).norm();

    MatrixLoop L = MatrixLoop::identity();
    for (int s = 0; s < nu; ++s) {
        const auto& sl = slots[static_cast<size_t>(s)];
        L.at(sl.i, sl.k).add_to(sl.deg, u(s));
    }

    MatrixLoop R = L * g;
    cplx a_c = R.at(0, 0).coeff(0);
    if (!(a_c.real() > 0.0) || std::abs(a_c.imag()) > 1e-6 * (1.0 + std::abs(a_c)))
        throw DegenerateLoopError("diagonal of the splitting is not positive");
    const double a = a_c.real();

    TriangularFactorization f;
    f.a = a;
    f.upper = MatrixLoop(R.at(0, 0).plus_part() * cplx(1.0 / a),
                         R.at(0, 1).plus_part() * cplx(1.0 / a),
                         R.at(1, 0).plus_part() * cplx(a),
                         R.at(1, 1).plus_part() * cplx(a));

    // lower = adj(L) / det(L); det(L) = 1 + eps with eps small
    LaurentPoly eps = L.det_poly() - LaurentPoly::one();
    LaurentPoly inv = LaurentPoly::one();
    LaurentPoly pw = LaurentPoly::one();
    for (int p = 1; p <= 60; ++p) {
        pw = (pw * (-eps)).truncated(-3 * D, 0);
        if (pw.l1_norm() < 1e-16) break;
        inv = inv + pw;
    }
    MatrixLoop adj(L.at(1, 1), -L.at(0, 1), -L.at(1, 0), L.at(0, 0));
    MatrixLoop invdet(inv, {}, {}, inv);
    f.lower = (adj * invdet).pruned(0.0);
    return f;
}

}  // namespace loopfact
