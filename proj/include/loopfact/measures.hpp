#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopfact/su2_factor.hpp"
#include "loopfact/weyl.hpp"

namespace loopfact {

// Zero-based exponent vector: q[l] is the power applied to the level-l
// shifted determinant (l = 0..n-1).  The closed form's p_{l+1} is q[l].
struct ExponentVector {
    std::vector<double> q;
    size_t size() const { return q.size(); }
};

struct IntegralResult {
    double value = 0.0;
    double stderr_est = 0.0;  // 0 for closed form / quadrature
    long long samples = 0;
    std::uint64_t seed = 0;
    std::string method;    // "closed-form", "quadrature", "importance-mc"
    std::string proposal;  // declared proposal measure, for the report
};

// prod_{j=1}^n (1 + |zeta_j|^2)^{2(j-1)}, the density of dx against dzeta.
double jacobian_density(const ZetaCoords& zeta);

// |det| of the real 2n x 2n central-difference Jacobian of zeta -> x.
// Step is relative (h_j = step * (1 + |zeta_j|)).  Oracle for the above.
double jacobian_fd(const ZetaCoords& zeta, double step = 1e-5);

// pi^n prod_{j=1}^n (sum_{i=0}^{j-1} (j-i) q_i - (2j-1))^{-1}.
// Throws DivergentIntegralError naming the first failing level when the
// finiteness condition sum (j-i) q_i > 2j-1 breaks.
double closed_form_integral(const ExponentVector& q);

// The one-dimensional exponents s_j = sum_{i<j} (j-i) q_i - 2(j-1) of the
// integrand after the change of variables (including the Jacobian).
std::vector<double> level_exponents(const ExponentVector& q);

// Importance-sampled estimate of
//   int prod_l det(1 + B(x-shift_l) B(x-shift_l)^H)^{-q_l} dlambda(x).
// zeta_j are drawn independently from c_j (1+|zeta|^2)^{-t_j} with
// t_j = max(1.25, s_j - 0.5); the integrand is evaluated through the
// determinant code in x coordinates.  Deterministic for fixed seed: the
// sample stream is sharded with per-shard generators keyed by (seed, shard)
// and merged in shard order.
IntegralResult monte_carlo_integral(const ExponentVector& q, long long samples,
                                    std::uint64_t seed, int shards = 16);

// Deterministic quadrature for n = 1 (radial integral), evaluating the
// integrand through the determinant code.
IntegralResult quadrature_integral_n1(double q0, int grid = 20000);

// true iff p > 2 - 1/n, the exact finiteness threshold of
// det(1 + B_n B_n^H)^{-p} dlambda.
bool criticality(double p, int n);

// Running means of a Monte Carlo estimate at the critical exponent; they
// grow without stabilizing.  Returned at `checkpoints` evenly spaced sample
// counts for reporting.
std::vector<double> divergence_witness(int n, long long samples,
                                       std::uint64_t seed, int checkpoints = 8);

// Cell Haar density prod (1+|zeta_j|^2)^{e_j} with exponents from
// haar_exponents(word); both closed forms are evaluated and must agree.
double haar_density_word(const AffineWord& word, const ZetaCoords& zeta);

}  // namespace loopfact
