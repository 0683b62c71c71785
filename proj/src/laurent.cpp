#include "loopfact/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace loopfact {

LaurentPoly::LaurentPoly(cplx constant) {
    if (constant != cplx(0.0)) c_[0] = constant;
}

LaurentPoly LaurentPoly::monomial(int deg, cplx c) {
    LaurentPoly p;
    if (c != cplx(0.0)) p.c_[deg] = c;
    return p;
}

cplx LaurentPoly::coeff(int deg) const {
    auto it = c_.find(deg);
    return it == c_.end() ? cplx(0.0) : it->second;
}

void LaurentPoly::set_coeff(int deg, cplx v) {
    if (v == cplx(0.0))
        c_.erase(deg);
    else
        c_[deg] = v;
}

void LaurentPoly::add_to(int deg, cplx v) {
    auto it = c_.find(deg);
    if (it == c_.end()) {
        if (v != cplx(0.0)) c_[deg] = v;
        return;
    }
    it->second += v;
    if (it->second == cplx(0.0)) c_.erase(it);
}

int LaurentPoly::min_deg() const { return c_.empty() ? 0 : c_.begin()->first; }
int LaurentPoly::max_deg() const { return c_.empty() ? 0 : c_.rbegin()->first; }

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [d, v] : o.c_) r.add_to(d, v);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [d, v] : o.c_) r.add_to(d, -v);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [d1, v1] : c_)
        for (const auto& [d2, v2] : o.c_) r.add_to(d1 + d2, v1 * v2);
    return r;
}

LaurentPoly LaurentPoly::operator*(cplx s) const {
    LaurentPoly r;
    if (s == cplx(0.0)) return r;
    for (const auto& [d, v] : c_) r.c_[d] = v * s;
    return r;
}

LaurentPoly LaurentPoly::operator-() const { return *this * cplx(-1.0); }

LaurentPoly LaurentPoly::star() const {
    LaurentPoly r;
    for (const auto& [d, v] : c_) r.c_[-d] = std::conj(v);
    return r;
}

LaurentPoly LaurentPoly::plus_part() const {
    LaurentPoly r;
    for (const auto& [d, v] : c_)
        if (d >= 0) r.c_[d] = v;
    return r;
}

LaurentPoly LaurentPoly::singular_part() const {
    LaurentPoly r;
    for (const auto& [d, v] : c_)
        if (d < 0) r.c_[d] = v;
    return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r;
    for (const auto& [d, v] : c_) r.c_[d + k] = v;
    return r;
}

LaurentPoly LaurentPoly::truncated(int lo, int hi) const {
    LaurentPoly r;
    for (const auto& [d, v] : c_)
        if (d >= lo && d <= hi) r.c_[d] = v;
    return r;
}

double LaurentPoly::mass_outside(int lo, int hi) const {
    double m = 0.0;
    for (const auto& [d, v] : c_)
        if (d < lo || d > hi) m += std::abs(v);
    return m;
}

cplx LaurentPoly::eval(cplx z) const {
    cplx acc(0.0);
    for (const auto& [d, v] : c_) acc += v * std::pow(z, d);
    return acc;
}

double LaurentPoly::l1_norm() const {
    double m = 0.0;
    for (const auto& [d, v] : c_) m += std::abs(v);
    return m;
}

double LaurentPoly::linf_coeff() const {
    double m = 0.0;
    for (const auto& [d, v] : c_) m = std::max(m, std::abs(v));
    return m;
}

LaurentPoly LaurentPoly::pruned(double eps) const {
    LaurentPoly r;
    for (const auto& [d, v] : c_)
        if (std::abs(v) > eps) r.c_[d] = v;
    return r;
}

bool LaurentPoly::approx_equal(const LaurentPoly& o, double tol) const {
    int lo = std::min(min_deg(), o.min_deg());
    int hi = std::max(max_deg(), o.max_deg());
    for (int d = lo; d <= hi; ++d)
        if (std::abs(coeff(d) - o.coeff(d)) > tol) return false;
    return true;
}

CircleSampling::CircleSampling(int n) : count(n) {
    points.reserve(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * std::numbers::pi * k / n;
        points.emplace_back(std::cos(th), std::sin(th));
    }
}

std::vector<cplx> CircleSampling::dft_coeffs(const std::vector<cplx>& values, int lo) const {
    std::vector<cplx> out(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) {
        int deg = lo + j;
        cplx acc(0.0);
        for (int k = 0; k < count; ++k) {
            double th = -2.0 * std::numbers::pi * deg * k / count;
            acc += values[static_cast<size_t>(k)] * cplx(std::cos(th), std::sin(th));
        }
        out[static_cast<size_t>(j)] = acc / static_cast<double>(count);
    }
    return out;
}

}  // namespace loopfact
