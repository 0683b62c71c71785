#include "loopfact/toeplitz.hpp"

#include <cmath>
#include <ostream>

#include "loopfact/errors.hpp"

namespace loopfact {

void FiniteSection::to_csv(std::ostream& os) const {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (j) os << ',';
            os << matrix(i, j).real() << ',' << matrix(i, j).imag();
        }
        os << '\n';
    }
}

FiniteSection b_matrix(const std::vector<cplx>& x) {
    const int n = static_cast<int>(x.size());
    FiniteSection s;
    s.tag = BasisTag::ScalarMonomial;
    s.row_hi = n;
    s.row_lo = 1;
    s.col_hi = n;
    s.col_lo = 1;
    s.matrix = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) s.matrix(i - 1, j - 1) = x[static_cast<size_t>(n - i + j - 1)];
    return s;
}

double det_one_plus_bbstar(const std::vector<cplx>& x) {
    if (x.empty()) return 1.0;
    Eigen::MatrixXcd b = b_matrix(x).matrix;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(b.rows(), b.rows()) + b * b.adjoint();
    return m.determinant().real();
}

FiniteSection hankel_block(const LaurentPoly& symbol, int sec) {
    FiniteSection s;
    s.tag = BasisTag::ScalarMonomial;
    s.row_hi = -1;
    s.row_lo = -sec;
    s.col_hi = sec - 1;
    s.col_lo = 0;
    s.matrix = Eigen::MatrixXcd::Zero(sec, sec);
    // rows: z^{-1}, z^{-2}, ...; cols: z^{sec-1}, ..., z^0
    for (int r = 0; r < sec; ++r) {
        int m = -1 - r;
        for (int c = 0; c < sec; ++c) {
            int k = sec - 1 - c;
            s.matrix(r, c) = symbol.coeff(m - k);
        }
    }
    int need = symbol.empty() ? 0 : -symbol.min_deg();
    s.exact = sec >= need;
    if (!s.exact) {
        for (const auto& [d, v] : symbol.coeffs())
            if (d < -sec) s.tail_bound += std::abs(v);
    }
    return s;
}

FiniteSection hankel_block(const MatrixLoop& symbol, int sec) {
    FiniteSection s;
    s.tag = BasisTag::InterleavedVector;
    s.row_hi = -1;
    s.row_lo = -sec;
    s.col_hi = sec - 1;
    s.col_lo = 0;
    s.matrix = Eigen::MatrixXcd::Zero(2 * sec, 2 * sec);
    for (int r = 0; r < 2 * sec; ++r) {
        int m = -1 - r / 2;
        int i = r % 2;
        for (int c = 0; c < 2 * sec; ++c) {
            int k = (sec - 1) - c / 2;
            int j = c % 2;
            s.matrix(r, c) = symbol.at(i, j).coeff(m - k);
        }
    }
    int need = std::max(0, -symbol.min_deg());
    s.exact = sec >= need;
    if (!s.exact) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (const auto& [d, v] : symbol.at(i, j).coeffs())
                    if (d < -sec) s.tail_bound += std::abs(v);
    }
    return s;
}

namespace {

double sigma0_sq_of(const MatrixLoop& g) {
    int sec = std::max(1, -g.min_deg());
    Eigen::MatrixXcd c = hankel_block(g, sec).matrix;
    Eigen::MatrixXcd m =
        Eigen::MatrixXcd::Identity(c.cols(), c.cols()) - c.adjoint() * c;
    double det = m.determinant().real();
    if (!(det > 0.0))
        throw DegenerateLoopError("loop outside the big cell: det(1 - C^H C) <= 0");
    return det;
}

MatrixLoop half_spin_conjugate(const MatrixLoop& g) {
    // diag(z^{1/2}, z^{-1/2}) g diag(z^{-1/2}, z^{1/2}); single-valued result.
    return MatrixLoop(g.at(0, 0), g.at(0, 1).shifted(1), g.at(1, 0).shifted(-1),
                      g.at(1, 1));
}

}  // namespace

SigmaValues sigma_values(const MatrixLoop& g, double unitary_tol) {
    double res = g.unitarity_residual();
    if (res > unitary_tol)
        throw DomainError("symbol is not unitary within tolerance (residual " +
                          std::to_string(res) + ")");
    SigmaValues sv;
    sv.sigma0_sq = sigma0_sq_of(g);
    sv.sigma1_sq = sigma0_sq_of(half_spin_conjugate(g));
    sv.a = std::sqrt(sv.sigma1_sq / sv.sigma0_sq);
    return sv;
}

double toeplitz_det_product(const MatrixLoop& g, double unitary_tol) {
    double res = g.unitarity_residual();
    if (res > unitary_tol)
        throw DomainError("symbol is not unitary within tolerance (residual " +
                          std::to_string(res) + ")");
    int sec = std::max(1, -g.min_deg());
    Eigen::MatrixXcd c = hankel_block(g, sec).matrix;
    Eigen::MatrixXcd m =
        Eigen::MatrixXcd::Identity(c.rows(), c.rows()) - c * c.adjoint();
    double det = m.determinant().real();
    if (!(det > 0.0))
        throw DegenerateLoopError("loop outside the big cell: det(1 - C C^H) <= 0");
    return det;
}

SzegoResult szego_torus(const LaurentPoly& chi, int n, double conv_tol, int max_n) {
    auto value_at = [&chi](int sec) {
        // symbol-truncation guard; the doubling test below is the value gate
        TorusLoopResult t = torus_loop(chi, sec, 1e-6);
        Eigen::MatrixXcd c = hankel_block(t.loop, sec).matrix;
        Eigen::MatrixXcd m =
            Eigen::MatrixXcd::Identity(c.cols(), c.cols()) - c.adjoint() * c;
        return m.determinant().real();
    };
    double prev = value_at(n);
    int sec = 2 * n;
    double cur = value_at(sec);
    while (std::abs(cur - prev) >= conv_tol) {
        if (sec >= max_n)
            throw ConvergenceError("torus determinant sections did not converge",
                                   prev, cur);
        prev = cur;
        sec *= 2;
        cur = value_at(sec);
    }
    return {cur, std::abs(cur - prev), sec};
}

double torus_sigma_reference(const LaurentPoly& chi) {
    double s = 0.0;
    for (const auto& [d, v] : chi.coeffs())
        if (d >= 1) s += d * std::norm(v);
    return std::exp(-2.0 * s);
}

}  // namespace loopfact
