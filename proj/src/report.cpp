#include "loopfact/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include "loopfact/errors.hpp"
#include "loopfact/iwasawa.hpp"
#include "loopfact/toeplitz.hpp"
#include "loopfact/weyl.hpp"

namespace loopfact {

void RunConfig::validate() const {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (trunc < 1) throw DomainError("truncation degree must be positive");
    if (samples < 1) throw DomainError("sample count must be positive");
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CheckRecord make_check(std::string name, std::string anchor, std::string inputs,
                       double expected, double actual, double tolerance) {
    CheckRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.inputs = std::move(inputs);
    r.expected = expected;
    r.actual = actual;
    r.tolerance = tolerance;
    r.pass = std::abs(actual - expected) <= tolerance;
    return r;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += ch;
        }
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d4ecda0044b8dbULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Sub-stream generator keyed by (seed, suite, index); no global RNG state.
std::mt19937_64 sub_rng(std::uint64_t seed, const std::string& suite, int index) {
    return std::mt19937_64(
        splitmix64(seed ^ splitmix64(fnv1a(suite) + static_cast<std::uint64_t>(index))));
}

cplx disk_draw(std::mt19937_64& rng, double rmax) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double r = rmax * std::sqrt(unif(rng));
    double th = 2.0 * std::numbers::pi * unif(rng);
    return cplx(r * std::cos(th), r * std::sin(th));
}

ZetaCoords draw_zeta(std::mt19937_64& rng, int n, double rmax) {
    ZetaCoords z;
    for (int i = 0; i < n; ++i) z.values.push_back(disk_draw(rng, rmax));
    return z;
}

CheckRecord residual_check(std::string name, std::string anchor, std::string inputs,
                           double residual, double tolerance) {
    CheckRecord r = make_check(std::move(name), std::move(anchor), std::move(inputs),
                               0.0, residual, tolerance);
    return r;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// ---------------------------------------------------------------- loop_core

std::vector<CheckRecord> suite_loop_core(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    auto rng = sub_rng(cfg.seed, "loop_core", 0);

    double worst_star = 0.0, worst_split = 0.0;
    for (int t = 0; t < 20; ++t) {
        LaurentPoly p;
        for (int d = -5; d <= 5; ++d) p.set_coeff(d, disk_draw(rng, 2.0));
        LaurentPoly diff = p.star().star() - p;
        worst_star = std::max(worst_star, diff.l1_norm());
        LaurentPoly split = p.plus_part() + p.singular_part() - p;
        worst_split = std::max(worst_split, split.l1_norm());
    }
    out.push_back(residual_check("star-involution", "adjoint-involution", "20 random windows [-5,5]",
                                 worst_star, 0.0));
    out.push_back(residual_check("hardy-splitting-partition", "hardy-splitting",
                                 "20 random windows [-5,5]", worst_split, 0.0));

    double worst_unit = 0.0;
    for (int t = 0; t < 50; ++t) {
        int j = static_cast<int>(splitmix64(static_cast<std::uint64_t>(t)) % 5);
        MatrixLoop e = elementary_loop(j, disk_draw(rng, 2.0), t % 2 == 0
                                                                  ? PowerFamily::NegativePower
                                                                  : PowerFamily::PositivePower);
        worst_unit = std::max(worst_unit, e.unitarity_residual());
    }
    out.push_back(residual_check("elementary-loop-unitarity", "root-subgroup-loops",
                                 "50 random (j, zeta)", worst_unit, 1e-12));

    double worst_det = 0.0;
    for (int t = 0; t < 10; ++t) {
        MatrixLoop g = product_loop(draw_zeta(rng, 6, 1.0), PowerFamily::NegativePower);
        worst_det = std::max(worst_det,
                             (g.det_poly() - LaurentPoly::one()).l1_norm());
    }
    out.push_back(residual_check("product-loop-determinant", "root-subgroup-loops",
                                 "10 random products n=6", worst_det, 1e-12));

    // pinned evaluation cases
    Eigen::Matrix2cd s1v = weyl_s1().eval(cplx(1.0));
    double d1 = std::abs(s1v(0, 1) - cplx(0, 1)) + std::abs(s1v(1, 0) - cplx(0, 1)) +
                std::abs(s1v(0, 0)) + std::abs(s1v(1, 1));
    out.push_back(residual_check("s1-at-one", "weyl-representatives", "s1 at z=1", d1, 0.0));
    Eigen::Matrix2cd s0v = weyl_s0().eval(cplx(-1.0));
    double d0 = std::abs(s0v(0, 1) - cplx(0, -1)) + std::abs(s0v(1, 0) - cplx(0, -1)) +
                std::abs(s0v(0, 0)) + std::abs(s0v(1, 1));
    out.push_back(residual_check("s0-at-minus-one", "weyl-representatives", "s0 at z=-1", d0, 0.0));

    LaurentPoly chi;
    chi.set_coeff(1, cplx(0.3));
    chi.set_coeff(2, cplx(0.1));
    TorusLoopResult tl = torus_loop(chi, 24, 1e-10);
    out.push_back(residual_check("torus-loop-unitarity", "torus-exponential",
                                 "chi=0.3z+0.1z^2 window 24", tl.loop.unitarity_residual(),
                                 1e-9));
    out.push_back(residual_check("torus-loop-tail", "torus-exponential",
                                 "chi=0.3z+0.1z^2 window 24", tl.tail_bound, 1e-10));

    // coefficient recovery oracle on the sample grid
    LaurentPoly p;
    for (int d = -4; d <= 4; ++d) p.set_coeff(d, disk_draw(rng, 1.0));
    CircleSampling grid(16);
    std::vector<cplx> vals;
    for (cplx z : grid.points) vals.push_back(p.eval(z));
    std::vector<cplx> co = grid.dft_coeffs(vals, -8);
    double worst_dft = 0.0;
    for (int j = 0; j < 16; ++j)
        worst_dft = std::max(worst_dft, std::abs(co[static_cast<size_t>(j)] - p.coeff(-8 + j)));
    out.push_back(residual_check("sample-grid-coefficient-recovery", "plumbing",
                                 "window [-4,4], 16-point grid", worst_dft, 1e-12));
    return out;
}

// ----------------------------------------------------------- toeplitz_hankel

std::vector<CheckRecord> suite_toeplitz(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    auto rng = sub_rng(cfg.seed, "toeplitz_hankel", 0);

    // determinant identity over random coordinates
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        int n = 1 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t)) % 8);
        ZetaCoords z = draw_zeta(rng, n, 1.0);
        XCoords x = zeta_to_x(z);
        double lhs = det_one_plus_bbstar(x.values);
        double prod = 1.0;
        for (int j = 1; j <= n; ++j)
            prod *= std::pow(1.0 + std::norm(z.values[static_cast<size_t>(j - 1)]), j);
        worst = std::max(worst, rel_err(lhs, prod));
    }
    out.push_back(residual_check("determinant-product-identity", "determinant-product",
                                 "40 random zeta, n<=8", worst, 1e-9));

    // shifted identity
    double worst_shift = 0.0;
    for (int t = 0; t < 15; ++t) {
        int n = 2 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t) + 77) % 7);
        ZetaCoords z = draw_zeta(rng, n, 1.0);
        XCoords x = zeta_to_x(z);
        for (int l = 0; l < n; ++l) {
            std::vector<cplx> shifted(x.values.begin() + l, x.values.end());
            double lhs = det_one_plus_bbstar(shifted);
            double prod = 1.0;
            for (int j = 1; j <= n - l; ++j)
                prod *= std::pow(1.0 + std::norm(z.values[static_cast<size_t>(j + l - 1)]), j);
            worst_shift = std::max(worst_shift, rel_err(lhs, prod));
        }
    }
    out.push_back(residual_check("shifted-determinant-identity", "shifted-determinant",
                                 "15 random zeta, all shifts", worst_shift, 1e-9));

    // section-window independence
    {
        ZetaCoords z = draw_zeta(rng, 4, 1.0);
        MatrixLoop g = product_loop(z, PowerFamily::NegativePower);
        int w = -g.min_deg();
        auto det_at = [&g](int sec) {
            Eigen::MatrixXcd c = hankel_block(g, sec).matrix;
            Eigen::MatrixXcd m =
                Eigen::MatrixXcd::Identity(c.cols(), c.cols()) - c.adjoint() * c;
            return m.determinant().real();
        };
        out.push_back(residual_check("finite-rank-section-independence", "finite-section-exactness",
                                     "n=4 loop, sections w and w+5",
                                     std::abs(det_at(w) - det_at(w + 5)), 1e-12));
    }

    // sigma cross checks
    {
        ZetaCoords z1{{cplx(0.7, -0.2)}};
        SigmaValues sv = sigma_values(product_loop(z1, PowerFamily::NegativePower));
        double expect = 1.0 / (1.0 + std::norm(z1.values[0]));
        out.push_back(make_check("sigma0-one-factor", "matrix-coefficients",
                                 "zeta=(0.7-0.2i)", expect, sv.sigma0_sq, 1e-12));
        out.push_back(make_check("sigma1-one-factor", "matrix-coefficients",
                                 "zeta=(0.7-0.2i)", 1.0, sv.sigma1_sq, 1e-12));
    }
    {
        ZetaCoords z2{{cplx(0.5, 0.0), cplx(0.0, 0.25)}};
        SigmaValues sv = sigma_values(product_loop(z2, PowerFamily::NegativePower));
        double expect = 1.0 / (1.25 * 1.0625 * 1.0625);
        out.push_back(make_check("sigma0-two-factor", "matrix-coefficients",
                                 "zeta=(0.5, 0.25i)", expect, sv.sigma0_sq, 1e-12));
        XCoords x = zeta_to_x(z2);
        out.push_back(make_check("sigma0-vs-b-matrix", "determinant-product",
                                 "zeta=(0.5, 0.25i)", 1.0 / det_one_plus_bbstar(x.values),
                                 sv.sigma0_sq, 1e-12));
    }

    // a from sigma_values vs a from the scalar-Hankel factorization route
    double worst_a = 0.0;
    for (int t = 0; t < 10; ++t) {
        int n = 1 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t) + 5) % 6);
        ZetaCoords z = draw_zeta(rng, n, 1.0);
        MatrixLoop g = product_loop(z, PowerFamily::NegativePower);
        SigmaValues sv = sigma_values(g);
        TriangularFactorization f = factor_unipotent(zeta_to_x(z));
        worst_a = std::max(worst_a, rel_err(f.a, sv.a));
    }
    out.push_back(residual_check("diagonal-vs-sigma-ratio", "diagonal-consistency",
                                 "10 random zeta, n<=6", worst_a, 1e-9));

    // pinned B matrices
    {
        std::vector<cplx> x{cplx(1.0)};
        double d = det_one_plus_bbstar(x);
        out.push_back(make_check("b-matrix-n2-det", "determinant-product",
                                 "x=(1,0) from zeta=(1,0)", 2.0,
                                 det_one_plus_bbstar({cplx(1.0), cplx(0.0)}), 1e-14));
        out.push_back(make_check("b-matrix-n1", "determinant-product", "x=(1)", 2.0, d, 1e-14));
    }
    {
        std::vector<cplx> x{cplx(1, 2), cplx(-0.5, 0), cplx(0, 0.25)};
        FiniteSection b = b_matrix(x);
        double diff = std::abs(b.matrix(0, 0) - x[2]) + std::abs(b.matrix(1, 0) - x[1]) +
                      std::abs(b.matrix(2, 0) - x[0]) + std::abs(b.matrix(1, 1) - x[2]) +
                      std::abs(b.matrix(2, 1) - x[1]) + std::abs(b.matrix(2, 2) - x[2]) +
                      std::abs(b.matrix(0, 1)) + std::abs(b.matrix(0, 2)) +
                      std::abs(b.matrix(1, 2));
        out.push_back(residual_check("b-matrix-layout", "plumbing", "n=3 display", diff, 0.0));
    }

    // Hankel block of the unipotent loop reproduces B^T in the interleaved basis
    {
        std::vector<cplx> xv{cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(0.05, -0.3)};
        int n = 3;
        LaurentPoly x;
        for (int j = 1; j <= n; ++j) x.set_coeff(-j, xv[static_cast<size_t>(j - 1)]);
        MatrixLoop gm(LaurentPoly::one(), x, {}, LaurentPoly::one());
        FiniteSection h = hankel_block(gm, n);
        Eigen::MatrixXcd b = b_matrix(xv).matrix;
        double diff = 0.0;
        for (int m = 1; m <= n; ++m)
            for (int t2 = 0; t2 < n; ++t2)
                diff += std::abs(h.matrix(2 * (m - 1), 2 * t2 + 1) -
                                 b(t2, m - 1));  // block equals B transposed
        for (int r = 0; r < 2 * n; ++r)
            for (int c = 0; c < 2 * n; ++c)
                if (r % 2 == 1 || c % 2 == 0) diff += std::abs(h.matrix(r, c));
        out.push_back(residual_check("hankel-block-vs-b-matrix", "hankel-block-display",
                                     "n=3 unipotent symbol", diff, 0.0));
    }

    // Szego torus values
    {
        LaurentPoly chi;
        chi.set_coeff(1, cplx(0.2));
        SzegoResult s = szego_torus(chi, cfg.trunc / 2);
        out.push_back(make_check("szego-torus-single-mode", "szego-limit", "chi=0.2z",
                                 std::exp(-0.08), s.value, 1e-6));
    }
    {
        LaurentPoly chi;
        chi.set_coeff(1, cplx(0.1));
        chi.set_coeff(3, cplx(0.05));
        SzegoResult s = szego_torus(chi, cfg.trunc / 2);
        out.push_back(make_check("szego-torus-two-modes", "szego-limit", "chi=0.1z+0.05z^3",
                                 std::exp(-2.0 * (0.01 + 3.0 * 0.0025)), s.value, 1e-6));
    }

    out.push_back(make_check("toeplitz-det-identity-loop", "toeplitz-product",
                             "identity", 1.0, toeplitz_det_product(MatrixLoop::identity()),
                             1e-14));
    {
        ZetaCoords eta{{cplx(1.0)}};
        MatrixLoop h = product_loop(eta, PowerFamily::PositivePower);
        out.push_back(make_check("toeplitz-det-constant-factor", "toeplitz-product",
                                 "eta=(1) at level 0", 1.0, toeplitz_det_product(h), 1e-12));
    }
    return out;
}

// --------------------------------------------------------------- su2_factor

std::vector<CheckRecord> suite_su2(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    auto rng = sub_rng(cfg.seed, "su2_factor", 0);

    // pinned small displays
    {
        cplx z1(0.4, 0.3), z2(-0.2, 0.5);
        ZetaCoords z{{z1, z2}};
        XCoords x = zeta_to_x(z);
        double d = std::abs(x.values[0] - z1 * (1.0 + std::norm(z2))) +
                   std::abs(x.values[1] - z2);
        out.push_back(residual_check("coordinate-map-n2", "coordinate-recursion",
                                     "zeta=(0.4+0.3i, -0.2+0.5i)", d, 1e-15));
    }
    {
        cplx z1(0.3, -0.6), z2(0.2, 0.1), z3(-0.4, 0.25);
        ZetaCoords z{{z1, z2, z3}};
        XCoords x = zeta_to_x(z);
        double w3 = 1.0 + std::norm(z3);
        cplx e1 = z1 * (1.0 + std::norm(z2)) * w3 + z2 * z2 * std::conj(z3) * w3;
        cplx e2 = z2 * w3;
        double d = std::abs(x.values[0] - e1) + std::abs(x.values[1] - e2) +
                   std::abs(x.values[2] - z3);
        out.push_back(residual_check("coordinate-map-n3", "coordinate-recursion",
                                     "3 pinned coefficients", d, 1e-14));
    }
    {
        cplx z1(0.15, 0.25), z2(-0.3, 0.1), z3(0.2, -0.2), z4(0.05, 0.35);
        ZetaCoords z{{z1, z2, z3, z4}};
        XCoords x = zeta_to_x(z);
        double w3 = 1.0 + std::norm(z3), w4 = 1.0 + std::norm(z4);
        cplx e1 = z1 * (1.0 + std::norm(z2)) * w3 * w4 +
                  z2 * w3 * w4 * (z2 * std::conj(z3) + 2.0 * z3 * std::conj(z4)) +
                  z3 * w4 * (z3 * std::conj(z4)) * (z3 * std::conj(z4));
        cplx e2 = z2 * w3 * w4 + z3 * w4 * (z3 * std::conj(z4));
        cplx e3 = z3 * w4;
        double d = std::abs(x.values[0] - e1) + std::abs(x.values[1] - e2) +
                   std::abs(x.values[2] - e3) + std::abs(x.values[3] - z4);
        out.push_back(residual_check("coordinate-map-n4", "coordinate-recursion",
                                     "4 pinned coefficients", d, 1e-14));
    }

    // top coefficient law + shift law
    double worst_top = 0.0, worst_shift = 0.0;
    for (int t = 0; t < 20; ++t) {
        int n = 1 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t)) % 8);
        ZetaCoords z = draw_zeta(rng, n, 1.0);
        XCoords x = zeta_to_x(z);
        worst_top = std::max(worst_top,
                             std::abs(x.values[static_cast<size_t>(n - 1)] -
                                      z.values[static_cast<size_t>(n - 1)]));
        if (n >= 2) {
            ZetaCoords suffix;
            suffix.values.assign(z.values.begin() + 1, z.values.end());
            XCoords xs = zeta_to_x(suffix);
            for (int j = 2; j <= n; ++j)
                worst_shift = std::max(worst_shift,
                                       std::abs(x.values[static_cast<size_t>(j - 1)] -
                                                xs.values[static_cast<size_t>(j - 2)]));
        }
    }
    out.push_back(residual_check("top-coefficient-law", "coordinate-recursion",
                                 "20 random zeta, n<=8", worst_top, 0.0));
    out.push_back(residual_check("shift-law", "coordinate-shift",
                                 "20 random zeta, n<=8", worst_shift, 1e-13));

    // oracle equivalence and round trips
    double worst_oracle = 0.0, worst_round = 0.0, worst_bf = 0.0;
    for (int t = 0; t < 20; ++t) {
        int n = 1 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t) + 3) % 8);
        ZetaCoords z = draw_zeta(rng, n, 0.9);
        XCoords x = zeta_to_x(z);
        XCoords x2 = x_from_loop(product_loop(z, PowerFamily::NegativePower));
        for (int j = 0; j < n; ++j)
            worst_oracle = std::max(worst_oracle,
                                    std::abs(x.values[static_cast<size_t>(j)] -
                                             (j < static_cast<int>(x2.values.size())
                                                  ? x2.values[static_cast<size_t>(j)]
                                                  : cplx(0.0))));
        ZetaCoords back = x_to_zeta(x);
        ZetaCoords back_bf = x_to_zeta_bruteforce(x);
        for (int j = 0; j < n; ++j) {
            worst_round = std::max(worst_round, std::abs(back.values[static_cast<size_t>(j)] -
                                                         z.values[static_cast<size_t>(j)]));
            worst_bf = std::max(worst_bf, std::abs(back_bf.values[static_cast<size_t>(j)] -
                                                   z.values[static_cast<size_t>(j)]));
        }
    }
    out.push_back(residual_check("coordinate-oracle-equivalence", "oracle-equivalence",
                                 "20 random zeta, n<=8", worst_oracle, 1e-10));
    out.push_back(residual_check("coordinate-round-trip", "coordinate-inverse",
                                 "20 random zeta, n<=8", worst_round, 1e-10));
    out.push_back(residual_check("coordinate-inverse-bruteforce", "coordinate-inverse",
                                 "20 random zeta, n<=8", worst_bf, 1e-10));

    // x1 recursion
    {
        ZetaCoords z = draw_zeta(rng, 5, 0.9);
        cplx v = x1_series_check(z);
        out.push_back(residual_check("x1-recursion-consistency", "x1-recursion",
                                     "random zeta n=5",
                                     std::abs(v - zeta_to_x(z).values[0]), 1e-12));
    }

    // unipotent factorization
    double worst_unit = 0.0, worst_deg = 0.0, worst_avs = 0.0;
    for (int t = 0; t < 15; ++t) {
        int n = 1 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t) + 9) % 6);
        XCoords x;
        for (int j = 0; j < n; ++j) x.values.push_back(disk_draw(rng, 1.0));
        TriangularFactorization f = factor_unipotent(x);
        MatrixLoop g = f.reconstruct();
        worst_unit = std::max(worst_unit, g.unitarity_residual());
        worst_deg = std::max({worst_deg,
                              f.upper.at(0, 0).mass_outside(0, n - 1),
                              f.upper.at(0, 1).mass_outside(0, std::max(0, n - 2)),
                              f.upper.at(1, 0).mass_outside(1, n),
                              f.upper.at(1, 1).mass_outside(0, n - 1)});
        SigmaValues sv = sigma_values(g);
        worst_avs = std::max(worst_avs, rel_err(f.a, sv.a));
    }
    out.push_back(residual_check("factorization-unitary", "unipotent-factorization",
                                 "15 random x, n<=6", worst_unit, 1e-9));
    out.push_back(residual_check("factorization-degree-windows", "unipotent-factorization",
                                 "15 random x, n<=6", worst_deg, 0.0));
    out.push_back(residual_check("factorization-diagonal-vs-sigma", "diagonal-consistency",
                                 "15 random x, n<=6", worst_avs, 1e-9));

    {
        cplx z1(0.6, -0.4);
        XCoords x{{z1}};
        TriangularFactorization f = factor_unipotent(x);
        double d = std::abs(f.a * f.a - (1.0 + std::norm(z1)));
        d += (f.upper.at(1, 0) - LaurentPoly::monomial(1, -std::conj(z1))).l1_norm();
        d += f.upper.at(0, 1).l1_norm() + (f.upper.at(0, 0) - LaurentPoly::one()).l1_norm() +
             (f.upper.at(1, 1) - LaurentPoly::one()).l1_norm();
        out.push_back(residual_check("factorization-n1-closed-form", "unipotent-factorization",
                                     "x=zeta z^-1", d, 1e-12));
    }

    // determinant consistency: a^2 = prod (1+|zeta_j|^2)
    double worst_acons = 0.0;
    for (int t = 0; t < 10; ++t) {
        int n = 1 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t) + 21) % 6);
        ZetaCoords z = draw_zeta(rng, n, 1.0);
        TriangularFactorization f = factor_unipotent(zeta_to_x(z));
        double prod = 1.0;
        for (cplx v : z.values) prod *= 1.0 + std::norm(v);
        worst_acons = std::max(worst_acons, rel_err(f.a, std::sqrt(prod)));
    }
    out.push_back(residual_check("diagonal-product-law", "diagonal-consistency",
                                 "10 random zeta, n<=6", worst_acons, 1e-9));

    // positive-power family
    {
        cplx e0(0.45, 0.2);
        ZetaCoords eta{{e0}};
        MatrixLoop h = product_loop(eta, PowerFamily::PositivePower);
        SigmaValues sv = sigma_values(h);
        double d = std::abs(sv.sigma0_sq - 1.0) +
                   std::abs(sv.sigma1_sq - 1.0 / (1.0 + std::norm(e0)));
        out.push_back(residual_check("h-family-constant-sigmas", "matrix-coefficients",
                                     "eta=(0.45+0.2i)", d, 1e-12));
    }
    double worst_h = 0.0, worst_hsig = 0.0;
    for (int t = 0; t < 8; ++t) {
        ZetaCoords eta = draw_zeta(rng, 3, 0.8);
        XCoords y = y_from_eta(eta);
        TriangularFactorization f = factor_h(y);
        MatrixLoop h = product_loop(eta, PowerFamily::PositivePower);
        worst_h = std::max(worst_h, f.reconstruct().max_distance(h));
        double s0 = 1.0, s1 = 1.0;
        for (size_t k = 0; k < eta.values.size(); ++k) {
            double w = 1.0 + std::norm(eta.values[k]);
            s0 *= std::pow(w, -static_cast<double>(k));
            s1 *= std::pow(w, -static_cast<double>(k + 1));
        }
        SigmaValues sv = sigma_values(h);
        worst_hsig = std::max({worst_hsig, rel_err(sv.sigma0_sq, s0), rel_err(sv.sigma1_sq, s1)});
    }
    out.push_back(residual_check("h-family-reconstruction", "h-factorization",
                                 "8 random eta, n=3", worst_h, 1e-9));
    out.push_back(residual_check("h-family-sigma-products", "matrix-coefficients",
                                 "8 random eta, n=3", worst_hsig, 1e-9));

    // triple product
    {
        TripleProduct tp = triple_product(ZetaCoords{}, LaurentPoly{}, ZetaCoords{});
        double d = tp.loop.max_distance(MatrixLoop::identity()) +
                   std::abs(tp.predicted.sigma0_sq - 1.0) +
                   std::abs(tp.predicted.sigma1_sq - 1.0);
        out.push_back(residual_check("triple-product-trivial", "triple-product",
                                     "all factors empty", d, 1e-14));
    }
    {
        ZetaCoords z{{cplx(0.35, -0.15)}};
        TripleProduct tp = triple_product(ZetaCoords{}, LaurentPoly{}, z);
        double expect = 1.0 / (1.0 + std::norm(z.values[0]));
        out.push_back(make_check("triple-product-single-zeta", "triple-product",
                                 "eta empty, chi=0, zeta one value", expect,
                                 tp.predicted.sigma0_sq, 1e-14));
    }
    double worst_tp = 0.0;
    for (int t = 0; t < 4; ++t) {
        ZetaCoords eta = draw_zeta(rng, 2, 0.5);
        ZetaCoords z = draw_zeta(rng, 2, 0.5);
        LaurentPoly chi;
        chi.set_coeff(1, disk_draw(rng, 0.25));
        chi.set_coeff(2, disk_draw(rng, 0.15));
        TripleProduct tp = triple_product(eta, chi, z, 24);
        double det = toeplitz_det_product(tp.loop, 1e-6);
        SigmaValues sv = sigma_values(tp.loop, 1e-6);
        worst_tp = std::max({worst_tp, rel_err(det, tp.predicted.sigma0_sq),
                             rel_err(sv.sigma1_sq, tp.predicted.sigma1_sq),
                             rel_err(sv.a * sv.a, tp.predicted.a * tp.predicted.a)});
    }
    out.push_back(residual_check("triple-product-sigma-match", "triple-product",
                                 "4 random (eta, chi, zeta)", worst_tp, 1e-6));

    // l-matrix
    {
        LaurentPoly chi;
        chi.set_coeff(1, cplx(0.2, 0.1));
        MatrixLoop l = l_matrix(ZetaCoords{}, chi, ZetaCoords{}, 24);
        double tail = 0.0;
        LaurentPoly e_mcs = exp_series(-chi.star(), 24, 1e-13, &tail);
        LaurentPoly e_pcs = exp_series(chi.star(), 24, 1e-13, &tail);
        MatrixLoop expect(e_mcs, {}, {}, e_pcs);
        out.push_back(residual_check("l-matrix-torus-only", "lower-factor-assembly",
                                     "chi=0.2+0.1i at z", l.max_distance(expect), 1e-10));
    }
    double worst_l = 0.0;
    for (int t = 0; t < 3; ++t) {
        ZetaCoords eta = draw_zeta(rng, 2, 0.45);
        ZetaCoords z = draw_zeta(rng, 2, 0.45);
        LaurentPoly chi;
        chi.set_coeff(1, disk_draw(rng, 0.2));
        TripleProduct tp = triple_product(eta, chi, z, 28);
        MatrixLoop lp = l_matrix(eta, chi, z, 28);
        int d = std::max(4, -lp.min_deg() + 2);
        double rez = 0.0;
        TriangularFactorization bf = birkhoff_factor(tp.loop, d, &rez);
        worst_l = std::max(worst_l, lp.max_distance(bf.lower));
    }
    out.push_back(residual_check("l-matrix-vs-direct-splitting", "lower-factor-assembly",
                                 "3 random triples", worst_l, 1e-8));

    // injectivity at desk scale
    {
        double min_sep = 1e300;
        int pairs = 0;
        for (int t = 0; t < 1000 && pairs < 1000; ++t) {
            ZetaCoords ea = draw_zeta(rng, 2, 0.5), eb = draw_zeta(rng, 2, 0.5);
            ZetaCoords za = draw_zeta(rng, 2, 0.5), zb = draw_zeta(rng, 2, 0.5);
            LaurentPoly ca, cb;
            ca.set_coeff(1, disk_draw(rng, 0.2));
            cb.set_coeff(1, disk_draw(rng, 0.2));
            double sep = 0.0;
            for (int k = 0; k < 2; ++k)
                sep += std::abs(ea.values[static_cast<size_t>(k)] - eb.values[static_cast<size_t>(k)]) +
                       std::abs(za.values[static_cast<size_t>(k)] - zb.values[static_cast<size_t>(k)]);
            sep += (ca - cb).l1_norm();
            if (sep < 0.05) continue;
            ++pairs;
            MatrixLoop la = l_matrix(ea, ca, za, 12);
            MatrixLoop lb = l_matrix(eb, cb, zb, 12);
            min_sep = std::min(min_sep, la.max_distance(lb, 16));
        }
        CheckRecord r;
        r.name = "l-matrix-injectivity-sample";
        r.anchor = "lower-factor-injectivity";
        r.inputs = std::to_string(pairs) + " separated random pairs";
        r.expected = 1e-8;
        r.actual = min_sep;
        r.tolerance = 0.0;
        r.pass = min_sep > 1e-8;
        out.push_back(r);
    }
    return out;
}

// ----------------------------------------------------------------- measures

std::vector<CheckRecord> suite_measures(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    auto rng = sub_rng(cfg.seed, "measures", 0);
    const double pi = std::numbers::pi;

    {
        ExponentVector q{{2.0}};
        out.push_back(make_check("closed-form-n1", "closed-form-integral", "q=(2)", pi,
                                 closed_form_integral(q), 1e-14));
    }
    {
        ExponentVector q{{2.0, 1.0}};
        out.push_back(make_check("closed-form-n2", "closed-form-integral", "q=(2,1)",
                                 pi * pi / 2.0, closed_form_integral(q), 1e-14));
    }
    {
        bool threw = false;
        try {
            closed_form_integral(ExponentVector{{1.0}});
        } catch (const DivergentIntegralError&) {
            threw = true;
        }
        CheckRecord r;
        r.name = "closed-form-divergence-detected";
        r.anchor = "finiteness-threshold";
        r.inputs = "q=(1)";
        r.expected = 1.0;
        r.actual = threw ? 1.0 : 0.0;
        r.pass = threw;
        out.push_back(r);
    }

    {
        IntegralResult quad = quadrature_integral_n1(2.0);
        out.push_back(residual_check("quadrature-n1", "closed-form-integral", "q=(2)",
                                     rel_err(quad.value, pi), 1e-3));
    }

    auto mc_check = [&](const char* name, const ExponentVector& q, long long samples,
                        std::uint64_t salt) {
        double closed = closed_form_integral(q);
        IntegralResult mc = monte_carlo_integral(q, samples, cfg.seed ^ salt);
        CheckRecord r;
        r.name = name;
        r.anchor = "closed-form-integral";
        r.inputs = "samples=" + std::to_string(samples) + " " + mc.proposal;
        r.expected = closed;
        r.actual = mc.value;
        r.tolerance = 3.0 * mc.stderr_est;
        r.pass = std::abs(mc.value - closed) <= r.tolerance;
        return r;
    };
    out.push_back(mc_check("monte-carlo-n1", ExponentVector{{2.0}},
                           std::min<long long>(cfg.samples, 100000), 11));
    out.push_back(mc_check("monte-carlo-n2", ExponentVector{{2.0, 1.0}},
                           std::min<long long>(cfg.samples, 100000), 22));
    out.push_back(mc_check("monte-carlo-n2b", ExponentVector{{3.0, 0.0}},
                           std::min<long long>(cfg.samples, 100000), 33));
    out.push_back(mc_check("monte-carlo-n3", ExponentVector{{2.0, 1.0, 1.0}},
                           std::min<long long>(cfg.samples, 50000), 44));

    // Jacobian density vs finite differences
    double worst_jac = 0.0;
    for (int t = 0; t < 10; ++t) {
        int n = 1 + static_cast<int>(splitmix64(static_cast<std::uint64_t>(t)) % 5);
        ZetaCoords z = draw_zeta(rng, n, 0.8);
        worst_jac = std::max(worst_jac, rel_err(jacobian_fd(z), jacobian_density(z)));
    }
    out.push_back(residual_check("jacobian-vs-finite-differences", "jacobian-density",
                                 "10 random zeta, n<=5", worst_jac, 1e-4));
    {
        ZetaCoords z{{cplx(0.77, -0.1), cplx(1.0, 0.0)}};
        out.push_back(make_check("jacobian-exponent-pattern", "jacobian-density",
                                 "n=2, zeta_2=1", 4.0, jacobian_density(z), 1e-14));
    }

    // criticality predicate
    {
        bool ok = true;
        for (int n = 1; n <= 10; ++n) {
            double boundary = 2.0 - 1.0 / n;
            if (criticality(boundary, n)) ok = false;
            if (!criticality(boundary + 0.05, n)) ok = false;
        }
        if (!criticality(2.0, 1)) ok = false;
        if (!criticality(1.95, 10)) ok = false;
        CheckRecord r;
        r.name = "criticality-threshold";
        r.anchor = "finiteness-threshold";
        r.inputs = "n=1..10 boundary and +0.05";
        r.expected = 1.0;
        r.actual = ok ? 1.0 : 0.0;
        r.pass = ok;
        out.push_back(r);
    }

    // Haar density on words
    {
        AffineWord w = AffineWord::alternating(0, 4);
        ZetaCoords z = draw_zeta(rng, 4, 1.0);
        out.push_back(make_check("haar-density-matches-jacobian", "haar-density",
                                 "alternating word n=4", jacobian_density(z),
                                 haar_density_word(w, z), 1e-12));
        AffineWord w1;
        w1.letters = {1};
        ZetaCoords z1 = draw_zeta(rng, 1, 1.0);
        out.push_back(make_check("haar-density-s1", "haar-density", "word (s1)", 1.0,
                                 haar_density_word(w1, z1), 1e-15));
    }

    // divergence witness (informational)
    {
        std::vector<double> run = divergence_witness(2, 20000, cfg.seed ^ 99);
        CheckRecord r;
        r.name = "critical-exponent-divergence-witness";
        r.anchor = "finiteness-threshold";
        r.inputs = "n=2, p=1.5, running means at 8 checkpoints";
        r.expected = run.front();
        r.actual = run.back();
        r.tolerance = 0.0;
        r.pass = true;
        r.informational = true;
        out.push_back(r);
    }
    return out;
}

// --------------------------------------------------------------- iwasawa_s2

std::vector<CheckRecord> suite_iwasawa(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    auto rng = sub_rng(cfg.seed, "iwasawa_s2", 0);
    const int N = std::max(16, cfg.trunc);

    {
        DiskLoop f{LaurentPoly{}};
        LaurentPoly h = solve_h(f, N);
        double d = (h - LaurentPoly(cplx(2.0))).l1_norm();
        IwasawaData data = recover_factors(f, h);
        d += std::abs(data.a0 - 1.0) +
             data.l_inv_star.max_distance(MatrixLoop::identity());
        out.push_back(residual_check("trivial-loop", "iwasawa-solver", "f=0", d, 1e-12));
    }
    {
        cplx c(0.35, -0.2);
        DiskLoop f{LaurentPoly(c)};
        LaurentPoly h16 = solve_h(f, 16);
        LaurentPoly h32 = solve_h(f, 32);
        double expect = 2.0 / (1.0 - std::norm(c));
        double d = std::abs(h16.coeff(0) - expect) + std::abs(h32.coeff(0) - expect) +
                   (h16 - h32).truncated(-8, 8).l1_norm();
        out.push_back(residual_check("constant-loop-h", "iwasawa-solver",
                                     "f=0.35-0.2i, N=16 vs 32", d, 1e-10));
        // nonloop degeneration: a0^2 = (1+|Z|^2)/(1-|Z|^2), F = -Z
        IwasawaData data = recover_factors(f, h32);
        double a0sq = (1.0 + std::norm(c)) / (1.0 - std::norm(c));
        double rez = 0.0;
        LaurentPoly F = build_F(data, f, &rez);
        double dv = std::abs(data.a0 * data.a0 - a0sq) + std::abs(F.eval(cplx(1.0)) + c) + rez;
        out.push_back(residual_check("nonloop-degeneration", "iwasawa-nonloop-model",
                                     "constant f", dv, 1e-8));
    }
    {
        LaurentPoly p;
        p.set_coeff(1, cplx(0.4));
        DiskLoop f(p);
        double interior = 0.0;
        LaurentPoly h = solve_h(f, N, 1e-6, &interior);
        IwasawaData data = recover_factors(f, h);
        // single-mode loops solve in closed form: h = 2/(1+|e|^2) for f = e z^k
        out.push_back(make_check("single-mode-zero-mode", "iwasawa-solver", "f=0.4z",
                                 2.0 / 1.16, h.coeff(0).real(), 1e-10));
        out.push_back(residual_check("zero-mode-gives-positive-a0", "iwasawa-solver",
                                     "f=0.4z", data.a0 > 0.0 ? 0.0 : 1.0, 0.0));
        out.push_back(residual_check("unitary-factor-residual", "iwasawa-reconstruction",
                                     "f=0.4z", data.unitarity_residual, 1e-6));
        out.push_back(residual_check("reconstruction-residual", "iwasawa-reconstruction",
                                     "f=0.4z", data.reconstruction_residual, 1e-6));
        double rez = 0.0;
        build_F(data, f, &rez);
        out.push_back(residual_check("f-ratio-consistency", "iwasawa-reconstruction",
                                     "f=0.4z", rez, 1e-6));
    }
    {
        LaurentPoly p;
        p.set_coeff(1, cplx(0.3));
        p.set_coeff(-1, cplx(0.2));
        DiskLoop f(p);
        LaurentPoly h = solve_h(f, N);
        IwasawaData data = recover_factors(f, h);
        double holo = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                holo = std::max(holo, data.l_inv_star.at(i, j).mass_outside(0, 1 << 20));
        out.push_back(residual_check("holomorphic-factor-mass", "iwasawa-reconstruction",
                                     "f=0.3z+0.2z^-1", holo, 1e-6));
        out.push_back(residual_check("reconstruction-residual-two-sided",
                                     "iwasawa-reconstruction", "f=0.3z+0.2z^-1",
                                     data.reconstruction_residual, 1e-6));
    }
    {
        LaurentPoly p;
        p.set_coeff(1, disk_draw(rng, 0.25));
        p.set_coeff(-2, disk_draw(rng, 0.2));
        DiskLoop f(p);
        LaurentPoly h32 = solve_h(f, 32);
        LaurentPoly h64 = solve_h(f, 64);
        double d = (h32 - h64).truncated(-8, 8).linf_coeff();
        out.push_back(residual_check("window-doubling-stability", "iwasawa-solver",
                                     "random f, N=32 vs 64, window [-8,8]", d, 1e-8));
    }
    return out;
}

// -------------------------------------------------------------- affine_weyl

std::vector<CheckRecord> suite_weyl(const RunConfig& cfg) {
    std::vector<CheckRecord> out;
    auto rng = sub_rng(cfg.seed, "affine_weyl", 0);

    {
        AffineCoroot r1 = reflect(1, coroot_h1());
        AffineCoroot r0 = reflect(0, coroot_h1());
        bool ok = (r1 == AffineCoroot{-1, 0}) && (r0 == AffineCoroot{-1, 2}) &&
                  (reflect(0, coroot_h0()) == AffineCoroot{1, -1});
        CheckRecord r;
        r.name = "simple-reflections";
        r.anchor = "coroot-reflections";
        r.inputs = "pinned cases";
        r.expected = 1.0;
        r.actual = ok ? 1.0 : 0.0;
        r.pass = ok;
        out.push_back(r);
    }
    {
        AffineWord w;
        w.letters = {0, 1};
        auto tau = inversion_coroots(w);
        bool ok = tau.size() == 2 && tau[0] == AffineCoroot{-1, 1} && tau[1] == AffineCoroot{-1, 2};
        CheckRecord r;
        r.name = "inversion-coroots-s0s1";
        r.anchor = "inversion-coroots";
        r.inputs = "word (s0, s1)";
        r.expected = 1.0;
        r.actual = ok ? 1.0 : 0.0;
        r.pass = ok;
        out.push_back(r);
    }
    {
        bool ok = true;
        for (int n = 1; n <= 20; ++n) {
            AffineWord w = AffineWord::alternating(0, n);
            auto e0 = exponents(minus_Lambda0(), w);
            auto hr = haar_exponents(w);
            for (int j = 1; j <= n; ++j) {
                if (e0[static_cast<size_t>(j - 1)] != j) ok = false;
                if (hr[static_cast<size_t>(j - 1)] != 2 * (j - 1)) ok = false;
            }
        }
        CheckRecord r;
        r.name = "alternating-exponent-patterns";
        r.anchor = "exponent-bridge";
        r.inputs = "alternating words n<=20";
        r.expected = 1.0;
        r.actual = ok ? 1.0 : 0.0;
        r.pass = ok;
        out.push_back(r);
    }
    {
        bool ok = true;
        for (int n = 0; n <= 12; ++n)
            for (int first = 0; first < 2; ++first) {
                if (n == 0 && first == 1) continue;
                haar_exponents(AffineWord::alternating(first, n));  // throws on mismatch
            }
        CheckRecord r;
        r.name = "haar-closed-forms-agree";
        r.anchor = "haar-density";
        r.inputs = "all reduced words, length<=12";
        r.expected = 1.0;
        r.actual = ok ? 1.0 : 0.0;
        r.pass = ok;
        out.push_back(r);
    }

    // exponent bridge to the determinant identity
    {
        int n = 5;
        AffineWord w = AffineWord::alternating(0, n);
        auto e0 = exponents(minus_Lambda0(), w);
        ZetaCoords z = draw_zeta(rng, n, 1.0);
        double prod = 1.0;
        for (int j = 0; j < n; ++j)
            prod *= std::pow(1.0 + std::norm(z.values[static_cast<size_t>(j)]),
                             -static_cast<double>(e0[static_cast<size_t>(j)]));
        SigmaValues sv = sigma_values(product_loop(z, PowerFamily::NegativePower));
        out.push_back(residual_check("exponent-bridge-sigma0", "exponent-bridge",
                                     "alternating word n=5", rel_err(prod, sv.sigma0_sq), 1e-9));
        auto e1 = exponents(minus_Lambda1(), w);
        double prod1 = 1.0;
        for (int j = 0; j < n; ++j)
            prod1 *= std::pow(1.0 + std::norm(z.values[static_cast<size_t>(j)]),
                              -static_cast<double>(e1[static_cast<size_t>(j)]));
        out.push_back(residual_check("exponent-bridge-sigma1", "exponent-bridge",
                                     "alternating word n=5", rel_err(prod1, sv.sigma1_sq), 1e-9));
    }

    {
        AffineWord w;
        w.letters = {1, 0};
        MatrixLoop rep = weyl_representative(w);
        MatrixLoop expect(LaurentPoly::monomial(1, cplx(-1.0)), {}, {},
                          LaurentPoly::monomial(-1, cplx(-1.0)));
        out.push_back(residual_check("representative-s1s0", "weyl-representatives",
                                     "word (s1, s0)", rep.max_distance(expect, 8), 1e-14));
        AffineWord w3;
        w3.letters = {0, 1, 0};
        MatrixLoop sq = weyl_representative(w3) * weyl_representative(w3);
        MatrixLoop minus_id(LaurentPoly(cplx(-1.0)), {}, {}, LaurentPoly(cplx(-1.0)));
        out.push_back(residual_check("representative-square-central", "weyl-representatives",
                                     "(s0 s1 s0)^2", sq.max_distance(minus_id, 8), 1e-14));
        // associativity grouping
        MatrixLoop g1 = (weyl_s0() * weyl_s1()) * weyl_s0();
        MatrixLoop g2 = weyl_s0() * (weyl_s1() * weyl_s0());
        out.push_back(residual_check("representative-grouping", "weyl-representatives",
                                     "s0 s1 s0 two groupings", g1.max_distance(g2, 8), 0.0));
    }

    {
        MatrixLoop a1 = diagram_automorphism(weyl_s1());
        out.push_back(residual_check("automorphism-swaps-reflections", "diagram-automorphism",
                                     "s1 -> s0", a1.max_distance(weyl_s0(), 8), 1e-14));
        ZetaCoords z = draw_zeta(rng, 3, 0.8);
        MatrixLoop g = product_loop(z, PowerFamily::NegativePower);
        MatrixLoop gg = diagram_automorphism(diagram_automorphism(g));
        out.push_back(residual_check("automorphism-involutive", "diagram-automorphism",
                                     "random product loop n=3", gg.max_distance(g, 16), 1e-13));
        ZetaCoords eta;
        for (size_t j = 0; j < z.values.size(); ++j)
            eta.values.push_back(-std::conj(z.values[j]));
        MatrixLoop h = product_loop(eta, PowerFamily::PositivePower);
        out.push_back(residual_check("automorphism-family-bridge", "diagram-automorphism",
                                     "eta_j = -conj(zeta_{j+1})",
                                     diagram_automorphism(g).max_distance(h, 16), 1e-13));
    }

    {
        CellCoordinates c0 = cell_dimension_and_coords(AffineWord{});
        CellCoordinates c1 = cell_dimension_and_coords(AffineWord::alternating(0, 1));
        CellCoordinates c4 = cell_dimension_and_coords(AffineWord::alternating(0, 4));
        bool ok = c0.dimension == 0 && c1.dimension == 1 && c1.deg_lo == -1 &&
                  c1.deg_hi == -1 && c4.dimension == 4 && c4.deg_lo == -4 && c4.deg_hi == -1 &&
                  c4.entry_row == 0 && c4.entry_col == 1;
        CheckRecord r;
        r.name = "cell-coordinates";
        r.anchor = "cell-parameterization";
        r.inputs = "lengths 0, 1, 4";
        r.expected = 1.0;
        r.actual = ok ? 1.0 : 0.0;
        r.pass = ok;
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"loop_core", "toeplitz_hankel", "su2_factor",
            "measures",  "iwasawa_s2",      "affine_weyl"};
}

std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg) {
    if (name == "loop_core") return suite_loop_core(cfg);
    if (name == "toeplitz_hankel") return suite_toeplitz(cfg);
    if (name == "su2_factor") return suite_su2(cfg);
    if (name == "measures") return suite_measures(cfg);
    if (name == "iwasawa_s2") return suite_iwasawa(cfg);
    if (name == "affine_weyl") return suite_weyl(cfg);
    throw DomainError("unknown suite: " + name);
}

int Report::failures() const {
    int n = 0;
    for (const auto& r : records)
        if (!r.pass && !r.informational) ++n;
    return n;
}

std::string Report::render() const {
    std::ostringstream os;
    for (const auto& r : records) {
        os << "{\"record\":{\"name\":\"" << json_escape(r.name) << "\",\"anchor\":\""
           << json_escape(r.anchor) << "\",\"inputs\":\"" << json_escape(r.inputs)
           << "\",\"expected\":" << format_g17(r.expected)
           << ",\"actual\":" << format_g17(r.actual)
           << ",\"tolerance\":" << format_g17(r.tolerance)
           << ",\"pass\":" << (r.pass ? "true" : "false");
        if (r.informational) os << ",\"informational\":true";
        os << "}}\n";
    }
    for (const auto& [name, value] : artifacts)
        os << "{\"artifact\":\"" << json_escape(name) << "\",\"value\":" << value << "}\n";
    os << "{\"summary\":{\"command\":\"" << json_escape(command) << "\",\"suite\":\""
       << json_escape(suite) << "\",\"seed\":" << seed
       << ",\"records\":" << records.size() << ",\"failures\":" << failures()
       << ",\"pass\":" << (all_pass() ? "true" : "false") << "}}\n";
    return os.str();
}

Report run_verify(const RunConfig& cfg) {
    cfg.validate();
    Report rep;
    rep.command = "verify";
    rep.seed = cfg.seed;
    rep.suite = cfg.suite;
    std::vector<std::string> wanted;
    for (const std::string& s : suite_names())
        if (cfg.suite == "all" || cfg.suite == s) wanted.push_back(s);
    if (wanted.empty()) throw DomainError("unknown suite: " + cfg.suite);
    std::vector<std::future<std::vector<CheckRecord>>> futs;
    futs.reserve(wanted.size());
    for (const std::string& s : wanted)
        futs.push_back(std::async(std::launch::async,
                                  [s, &cfg] { return run_suite(s, cfg); }));
    for (auto& f : futs) {
        auto rec = f.get();
        rep.records.insert(rep.records.end(), rec.begin(), rec.end());
    }
    return rep;
}

Report run_factor(const RunConfig& cfg, const FactorInput& in) {
    cfg.validate();
    Report rep;
    rep.command = "factor";
    rep.seed = cfg.seed;
    rep.suite = "";
    if (in.eta && !in.chi && !in.zeta) {
        // pure positive-power family: factor h directly
        XCoords y = y_from_eta(*in.eta);
        TriangularFactorization f = factor_h(y);
        MatrixLoop h = product_loop(*in.eta, PowerFamily::PositivePower);
        rep.records.push_back(residual_check("h-factorization-reconstruction",
                                             "h-factorization", "eta coordinates",
                                             f.reconstruct().max_distance(h), 1e-9));
        SigmaValues sv = sigma_values(h);
        rep.records.push_back(make_check("diagonal-vs-sigma-ratio", "diagonal-consistency",
                                         "a vs |sigma1|/|sigma0|", sv.a, f.a, 1e-9 * sv.a));
        rep.artifacts.emplace_back("lower", matrix_loop_to_json(f.lower));
        rep.artifacts.emplace_back("upper", matrix_loop_to_json(f.upper.pruned(1e-15)));
        rep.artifacts.emplace_back("a", format_g17(f.a));
        rep.artifacts.emplace_back(
            "sigma", "{\"sigma0_sq\":" + format_g17(sv.sigma0_sq) +
                         ",\"sigma1_sq\":" + format_g17(sv.sigma1_sq) +
                         ",\"a\":" + format_g17(sv.a) + "}");
        return rep;
    }
    if (in.eta || in.chi) {
        ZetaCoords eta = in.eta.value_or(ZetaCoords{});
        ZetaCoords zeta = in.zeta.value_or(ZetaCoords{});
        LaurentPoly chi = in.chi.value_or(LaurentPoly{});
        TripleProduct tp = triple_product(eta, chi, zeta, cfg.trunc);
        double det = toeplitz_det_product(tp.loop, 1e-6);
        SigmaValues sv = sigma_values(tp.loop, 1e-6);
        rep.records.push_back(make_check("triple-product-sigma0", "triple-product",
                                         "predicted vs finite-section determinant",
                                         tp.predicted.sigma0_sq, det,
                                         1e-6 * std::abs(tp.predicted.sigma0_sq)));
        rep.records.push_back(make_check("triple-product-sigma1", "triple-product",
                                         "predicted vs finite-section determinant",
                                         tp.predicted.sigma1_sq, sv.sigma1_sq,
                                         1e-6 * std::abs(tp.predicted.sigma1_sq)));
        MatrixLoop lp = l_matrix(eta, chi, zeta, cfg.trunc);
        double split_rez = 0.0;
        TriangularFactorization bf =
            birkhoff_factor(tp.loop, std::max(4, -lp.min_deg() + 2), &split_rez);
        rep.records.push_back(residual_check("l-matrix-vs-direct-splitting",
                                             "lower-factor-assembly",
                                             "assembled vs dense least squares",
                                             lp.max_distance(bf.lower), 1e-8));
        rep.records.push_back(make_check("diagonal-vs-predicted", "triple-product",
                                         "a from splitting vs product formula",
                                         tp.predicted.a, bf.a, 1e-7 * tp.predicted.a));
        rep.artifacts.emplace_back("loop", matrix_loop_to_json(tp.loop.pruned(1e-14)));
        rep.artifacts.emplace_back("lower", matrix_loop_to_json(bf.lower.pruned(1e-14)));
        rep.artifacts.emplace_back("upper", matrix_loop_to_json(bf.upper.pruned(1e-14)));
        rep.artifacts.emplace_back("a", format_g17(bf.a));
        rep.artifacts.emplace_back("l_matrix", matrix_loop_to_json(lp.pruned(1e-14)));
        rep.artifacts.emplace_back(
            "sigma", "{\"sigma0_sq\":" + format_g17(tp.predicted.sigma0_sq) +
                         ",\"sigma1_sq\":" + format_g17(tp.predicted.sigma1_sq) +
                         ",\"a\":" + format_g17(tp.predicted.a) + "}");
        return rep;
    }
    XCoords x;
    if (in.x)
        x = *in.x;
    else if (in.zeta)
        x = zeta_to_x(*in.zeta);
    else
        throw DomainError("factor input must provide zeta, eta, chi, or x");
    TriangularFactorization f = factor_unipotent(x);
    MatrixLoop g = f.reconstruct();
    rep.records.push_back(residual_check("reconstruction-unitarity",
                                         "unipotent-factorization", "given coordinates",
                                         g.unitarity_residual(), 1e-9));
    SigmaValues sv = sigma_values(g);
    rep.records.push_back(make_check("diagonal-vs-sigma-ratio", "diagonal-consistency",
                                     "a vs |sigma1|/|sigma0|", sv.a, f.a, 1e-9 * sv.a));
    if (in.zeta) {
        double prod = 1.0;
        for (cplx v : in.zeta->values) prod *= 1.0 + std::norm(v);
        rep.records.push_back(make_check("diagonal-product-law", "diagonal-consistency",
                                         "a^2 vs prod(1+|zeta|^2)", prod, f.a * f.a,
                                         1e-9 * prod));
    }
    rep.artifacts.emplace_back("lower", matrix_loop_to_json(f.lower));
    rep.artifacts.emplace_back("upper", matrix_loop_to_json(f.upper.pruned(1e-15)));
    rep.artifacts.emplace_back("a", format_g17(f.a));
    rep.artifacts.emplace_back(
        "sigma", "{\"sigma0_sq\":" + format_g17(sv.sigma0_sq) +
                     ",\"sigma1_sq\":" + format_g17(sv.sigma1_sq) +
                     ",\"a\":" + format_g17(sv.a) + "}");
    return rep;
}

Report run_integrate(const RunConfig& cfg, const ExponentVector& q) {
    cfg.validate();
    Report rep;
    rep.command = "integrate";
    rep.seed = cfg.seed;
    rep.suite = "";
    double closed = closed_form_integral(q);
    IntegralResult mc = monte_carlo_integral(q, cfg.samples, cfg.seed);
    CheckRecord r;
    r.name = "monte-carlo-vs-closed-form";
    r.anchor = "closed-form-integral";
    r.inputs = mc.proposal + ", samples=" + std::to_string(mc.samples);
    r.expected = closed;
    r.actual = mc.value;
    r.tolerance = 3.0 * mc.stderr_est;
    r.pass = std::abs(mc.value - closed) <= r.tolerance;
    rep.records.push_back(r);
    if (q.size() == 1) {
        IntegralResult quad = quadrature_integral_n1(q.q[0]);
        rep.records.push_back(make_check("quadrature-vs-closed-form", "closed-form-integral",
                                         quad.proposal, closed, quad.value, 1e-3 * closed));
    }
    rep.artifacts.emplace_back(
        "integral", "{\"value\":" + format_g17(mc.value) + ",\"stderr\":" +
                        format_g17(mc.stderr_est) + ",\"samples\":" +
                        std::to_string(mc.samples) + ",\"seed\":" + std::to_string(mc.seed) +
                        ",\"closed_form\":" + format_g17(closed) + ",\"proposal\":\"" +
                        json_escape(mc.proposal) + "\"}");
    return rep;
}

Report run_iwasawa(const RunConfig& cfg, const LaurentPoly& fpoly) {
    cfg.validate();
    Report rep;
    rep.command = "iwasawa";
    rep.seed = cfg.seed;
    rep.suite = "";
    DiskLoop f(fpoly);
    double interior = 0.0;
    LaurentPoly h = solve_h(f, cfg.trunc, cfg.tol > 1e-6 ? cfg.tol : 1e-6, &interior);
    IwasawaData data = recover_factors(f, h);
    double ratio_rez = 0.0;
    data.F = build_F(data, f, &ratio_rez);
    rep.records.push_back(residual_check("interior-residual", "iwasawa-solver",
                                         "N=" + std::to_string(cfg.trunc), interior, 1e-6));
    rep.records.push_back(residual_check("unitary-factor-residual", "iwasawa-reconstruction",
                                         "grid=128", data.unitarity_residual, 1e-6));
    rep.records.push_back(residual_check("reconstruction-residual", "iwasawa-reconstruction",
                                         "grid=128", data.reconstruction_residual, 1e-6));
    rep.records.push_back(residual_check("f-ratio-consistency", "iwasawa-reconstruction",
                                         "grid=128", ratio_rez, 1e-6));
    rep.artifacts.emplace_back("h", scalar_loop_to_json(h.pruned(1e-15)));
    rep.artifacts.emplace_back("a0", format_g17(data.a0));
    rep.artifacts.emplace_back("l_inv_star",
                               matrix_loop_to_json(data.l_inv_star.pruned(1e-15)));
    rep.artifacts.emplace_back("F", scalar_loop_to_json(data.F.pruned(1e-12)));
    return rep;
}

Report run_weyl(const RunConfig& cfg, const AffineWord& word) {
    cfg.validate();
    Report rep;
    rep.command = "weyl";
    rep.seed = cfg.seed;
    rep.suite = "";
    auto tau = inversion_coroots(word);
    auto e0 = exponents(minus_Lambda0(), word);
    auto e1 = exponents(minus_Lambda1(), word);
    auto hr = haar_exponents(word);
    CheckRecord r;
    r.name = "haar-closed-forms-agree";
    r.anchor = "haar-density";
    r.inputs = "word length " + std::to_string(word.size());
    r.expected = 1.0;
    r.actual = 1.0;
    r.pass = true;
    rep.records.push_back(r);

    auto ints = [](const std::vector<std::int64_t>& v) {
        std::string s = "[";
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v[i]);
        }
        return s + "]";
    };
    std::string taus = "[";
    for (size_t i = 0; i < tau.size(); ++i) {
        if (i) taus += ",";
        taus += "[" + std::to_string(tau[i].h1) + "," + std::to_string(tau[i].c) + "]";
    }
    taus += "]";
    rep.artifacts.emplace_back("inversion_coroots", taus);
    rep.artifacts.emplace_back("exponents_minus_Lambda0", ints(e0));
    rep.artifacts.emplace_back("exponents_minus_Lambda1", ints(e1));
    rep.artifacts.emplace_back("haar_exponents", ints(hr));
    rep.artifacts.emplace_back("representative",
                               matrix_loop_to_json(weyl_representative(word)));
    CellCoordinates cc = cell_dimension_and_coords(word);
    rep.artifacts.emplace_back("cell", "{\"dimension\":" + std::to_string(cc.dimension) +
                                           ",\"window\":\"" + json_escape(cc.text) + "\"}");
    return rep;
}

}  // namespace loopfact
