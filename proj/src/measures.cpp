#include "loopfact/measures.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>

#include "loopfact/errors.hpp"
#include "loopfact/toeplitz.hpp"

namespace loopfact {

double jacobian_density(const ZetaCoords& zeta) {
    double d = 1.0;
    for (size_t j = 1; j <= zeta.values.size(); ++j)
        d *= std::pow(1.0 + std::norm(zeta.values[j - 1]), 2.0 * (static_cast<double>(j) - 1.0));
    return d;
}

double jacobian_fd(const ZetaCoords& zeta, double step) {
    const int n = static_cast<int>(zeta.values.size());
    Eigen::MatrixXd jac(2 * n, 2 * n);
    auto embed = [n](const XCoords& x) {
        Eigen::VectorXd v(2 * n);
        for (int k = 0; k < n; ++k) {
            v(2 * k) = x.values[static_cast<size_t>(k)].real();
            v(2 * k + 1) = x.values[static_cast<size_t>(k)].imag();
        }
        return v;
    };
    for (int c = 0; c < 2 * n; ++c) {
        double h = step * (1.0 + std::abs(zeta.values[static_cast<size_t>(c / 2)]));
        ZetaCoords zp = zeta, zm = zeta;
        cplx dz = (c % 2 == 0) ? cplx(h, 0.0) : cplx(0.0, h);
        zp.values[static_cast<size_t>(c / 2)] += dz;
        zm.values[static_cast<size_t>(c / 2)] -= dz;
        jac.col(c) = (embed(zeta_to_x(zp)) - embed(zeta_to_x(zm))) / (2.0 * h);
    }
    return std::abs(jac.determinant());
}

std::vector<double> level_exponents(const ExponentVector& q) {
    const int n = static_cast<int>(q.size());
    std::vector<double> s(static_cast<size_t>(n));
    for (int j = 1; j <= n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < j; ++i) acc += (j - i) * q.q[static_cast<size_t>(i)];
        s[static_cast<size_t>(j - 1)] = acc - 2.0 * (j - 1);
    }
    return s;
}

double closed_form_integral(const ExponentVector& q) {
    const int n = static_cast<int>(q.size());
    if (n == 0) throw DomainError("empty exponent vector");
    std::vector<double> s = level_exponents(q);
    double value = 1.0;
    for (int j = 1; j <= n; ++j) {
        // s_j - 1 = sum (j-i) q_i - (2j-1)
        double denom = s[static_cast<size_t>(j - 1)] - 1.0;
        if (!(denom > 0.0))
            throw DivergentIntegralError(
                "integral diverges at level " + std::to_string(j), j);
        value *= std::numbers::pi / denom;
    }
    return value;
}

bool criticality(double p, int n) {
    if (n < 1) throw DomainError("n must be >= 1");
    return p > 2.0 - 1.0 / n;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d4ecda0044b8dbULL;
    return x ^ (x >> 31);
}

struct Welford {
    long long n = 0;
    double mean = 0.0, m2 = 0.0;
    void push(double v) {
        ++n;
        double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }
    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        double d = o.mean - mean;
        long long tot = n + o.n;
        mean += d * static_cast<double>(o.n) / static_cast<double>(tot);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                          static_cast<double>(tot);
        n = tot;
    }
};

// integrand in x coordinates through the determinant code; det(1 + B B^H)
// is >= 1 analytically, so the clamp only absorbs float cancellation on
// extreme tail draws
double det_integrand(const ExponentVector& q, const XCoords& x) {
    const int n = static_cast<int>(q.size());
    double f = 1.0;
    for (int l = 0; l < n; ++l) {
        std::vector<cplx> shifted(x.values.begin() + l, x.values.end());
        double det = std::max(det_one_plus_bbstar(shifted), 1.0);
        f *= std::pow(det, -q.q[static_cast<size_t>(l)]);
    }
    return f;
}

// draw |zeta|^2 = (1-U)^{-1/(t-1)} - 1, angle uniform; U is kept away from
// 1 (truncates ~1e-12 of proposal mass, far below the Monte Carlo noise)
cplx draw_zeta(std::mt19937_64& rng, double t) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u0 = std::min(unif(rng), 1.0 - 1e-12);
    double u = std::pow(1.0 - u0, -1.0 / (t - 1.0)) - 1.0;
    double r = std::sqrt(u);
    double th = 2.0 * std::numbers::pi * unif(rng);
    return cplx(r * std::cos(th), r * std::sin(th));
}

Welford mc_shard(const ExponentVector& q, const std::vector<double>& t,
                 long long count, std::uint64_t key) {
    std::mt19937_64 rng(key);
    const int n = static_cast<int>(q.size());
    Welford w;
    ZetaCoords z;
    z.values.resize(static_cast<size_t>(n));
    for (long long i = 0; i < count; ++i) {
        double logp = 0.0;
        for (int j = 0; j < n; ++j) {
            double tj = t[static_cast<size_t>(j)];
            z.values[static_cast<size_t>(j)] = draw_zeta(rng, tj);
            logp += std::log((tj - 1.0) / std::numbers::pi) -
                    tj * std::log1p(std::norm(z.values[static_cast<size_t>(j)]));
        }
        XCoords x = zeta_to_x(z);
        double val = det_integrand(q, x) * jacobian_density(z) * std::exp(-logp);
        w.push(val);
    }
    return w;
}

}  // namespace

IntegralResult monte_carlo_integral(const ExponentVector& q, long long samples,
                                    std::uint64_t seed, int shards) {
    const int n = static_cast<int>(q.size());
    if (n == 0) throw DomainError("empty exponent vector");
    if (samples <= 0) throw DomainError("sample count must be positive");
    if (shards < 1) throw DomainError("shard count must be positive");
    std::vector<double> s = level_exponents(q);
    std::vector<double> t(static_cast<size_t>(n));
    std::string proposal = "independent (1+|z|^2)^{-t_j}, t =";
    for (int j = 0; j < n; ++j) {
        if (s[static_cast<size_t>(j)] - 1.0 <= 0.0)
            throw DivergentIntegralError(
                "nonpositive margin at level " + std::to_string(j + 1), j + 1);
        t[static_cast<size_t>(j)] = std::max(1.25, s[static_cast<size_t>(j)] - 0.5);
        proposal += " " + std::to_string(t[static_cast<size_t>(j)]);
    }

    std::vector<std::future<Welford>> futs;
    long long base = samples / shards;
    for (int k = 0; k < shards; ++k) {
        long long count = base + (k == shards - 1 ? samples - base * shards : 0);
        std::uint64_t key = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k) + 1));
        futs.push_back(std::async(std::launch::async, mc_shard, q, t, count, key));
    }
    Welford total;
    for (auto& f : futs) total.merge(f.get());

    IntegralResult r;
    r.value = total.mean;
    r.stderr_est = total.n > 1 ? std::sqrt(total.m2 / (static_cast<double>(total.n) - 1.0) /
                                           static_cast<double>(total.n))
                               : 0.0;
    r.samples = total.n;
    r.seed = seed;
    r.method = "importance-mc";
    r.proposal = proposal;
    return r;
}

IntegralResult quadrature_integral_n1(double q0, int grid) {
    if (!(q0 > 1.0)) throw DivergentIntegralError("integral diverges at level 1", 1);
    // substitute u = v/(1-v); integrand evaluated via the 1x1 determinant
    auto f = [q0](double v) {
        double u = v / (1.0 - v);
        std::vector<cplx> x{cplx(std::sqrt(u), 0.0)};
        double det = det_one_plus_bbstar(x);
        return std::pow(det, -q0) / ((1.0 - v) * (1.0 - v));
    };
    const double eps = 1e-7;
    const double hi = 1.0 - eps;
    // composite Simpson on [0, hi]
    if (grid % 2 == 1) ++grid;
    double h = hi / grid;
    double acc = f(0.0) + f(hi);
    for (int i = 1; i < grid; ++i) acc += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    double integral = acc * h / 3.0;
    // analytic tail: integrand ~ (1-v)^{q0-2} near v = 1
    integral += std::pow(eps, q0 - 1.0) / (q0 - 1.0);
    IntegralResult r;
    r.value = std::numbers::pi * integral;
    r.stderr_est = 0.0;
    r.samples = grid;
    r.method = "quadrature";
    r.proposal = "simpson on u/(1+u) substitution";
    return r;
}

std::vector<double> divergence_witness(int n, long long samples,
                                       std::uint64_t seed, int checkpoints) {
    // density det(1 + B_n B_n^H)^{-p} at the critical p = 2 - 1/n; sample
    // from the (divergent-weight) proposal with t_j chosen as if p were
    // supercritical and watch the running mean drift upward.
    ExponentVector q;
    q.q.assign(static_cast<size_t>(n), 0.0);
    q.q[0] = 2.0 - 1.0 / n;
    std::vector<double> s = level_exponents(q);
    std::vector<double> t(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(j)] = std::max(1.25, s[static_cast<size_t>(j)] - 0.5);

    std::mt19937_64 rng(splitmix64(seed));
    Welford w;
    std::vector<double> run;
    long long step = std::max<long long>(1, samples / checkpoints);
    ZetaCoords z;
    z.values.resize(static_cast<size_t>(n));
    for (long long i = 1; i <= samples; ++i) {
        double logp = 0.0;
        for (int j = 0; j < n; ++j) {
            double tj = t[static_cast<size_t>(j)];
            z.values[static_cast<size_t>(j)] = draw_zeta(rng, tj);
            logp += std::log((tj - 1.0) / std::numbers::pi) -
                    tj * std::log1p(std::norm(z.values[static_cast<size_t>(j)]));
        }
        XCoords x = zeta_to_x(z);
        w.push(det_integrand(q, x) * jacobian_density(z) * std::exp(-logp));
        if (i % step == 0 && static_cast<int>(run.size()) < checkpoints)
            run.push_back(w.mean);
    }
    return run;
}

double haar_density_word(const AffineWord& word, const ZetaCoords& zeta) {
    if (word.size() != zeta.values.size())
        throw DomainError("word length must match the number of coordinates");
    std::vector<std::int64_t> tau = haar_exponents(word);  // asserts both forms
    double v = 1.0;
    for (size_t j = 0; j < tau.size(); ++j)
        v *= std::pow(1.0 + std::norm(zeta.values[j]), static_cast<double>(tau[j]));
    return v;
}

}  // namespace loopfact
