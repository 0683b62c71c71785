#include "loopfact/weyl.hpp"

#include <stdexcept>

#include "loopfact/errors.hpp"

namespace loopfact {

std::int64_t pair_alpha(int i, AffineCoroot h) {
    if (i != 0 && i != 1) throw DomainError("simple root index must be 0 or 1");
    return i == 0 ? -2 * h.h1 : 2 * h.h1;
}

std::int64_t pair_lambda(int i, AffineCoroot h) {
    if (i != 0 && i != 1) throw DomainError("fundamental weight index must be 0 or 1");
    return i == 0 ? h.c : h.h1 + h.c;
}

std::int64_t pair_delta(AffineCoroot h) { return h.h1 + 2 * h.c; }

AffineCoroot reflect(int i, AffineCoroot h) {
    std::int64_t k = pair_alpha(i, h);
    AffineCoroot hi = (i == 0) ? coroot_h0() : coroot_h1();
    return {h.h1 - k * hi.h1, h.c - k * hi.c};
}

AffineWord AffineWord::alternating(int first_letter, int length) {
    AffineWord w;
    w.letters.reserve(static_cast<size_t>(length));
    for (int j = 0; j < length; ++j) w.letters.push_back((first_letter + j) % 2);
    return w;
}

bool AffineWord::reduced() const {
    for (size_t j = 0; j < letters.size(); ++j) {
        if (letters[j] != 0 && letters[j] != 1) return false;
        if (j > 0 && letters[j] == letters[j - 1]) return false;
    }
    return true;
}

std::vector<AffineCoroot> inversion_coroots(const AffineWord& word) {
    if (!word.reduced()) throw DomainError("word is not reduced");
    std::vector<AffineCoroot> out;
    out.reserve(word.size());
    for (size_t j = 0; j < word.size(); ++j) {
        // w_{j-1}^{-1} h_{gamma_j} = r_1(r_2(...r_{j-1}(h_{gamma_j})...))
        AffineCoroot h = (word.letters[j] == 0) ? coroot_h0() : coroot_h1();
        for (size_t i = j; i-- > 0;) h = reflect(word.letters[i], h);
        out.push_back(h);
    }
    return out;
}

std::vector<std::int64_t> exponents(Weight lambda, const AffineWord& word) {
    if (lambda(coroot_h0()) > 0 || lambda(coroot_h1()) > 0)
        throw DomainError("weight is not antidominant");
    std::vector<std::int64_t> out;
    for (AffineCoroot h : inversion_coroots(word)) {
        std::int64_t e = -lambda(h);
        if (e < 0) throw DomainError("negative exponent: word/weight data inconsistent");
        out.push_back(e);
    }
    return out;
}

std::vector<std::int64_t> haar_exponents(const AffineWord& word) {
    std::vector<AffineCoroot> tau = inversion_coroots(word);
    const size_t n = word.size();

    std::vector<std::int64_t> form1(n);
    for (size_t j = 0; j < n; ++j) form1[j] = pair_delta(tau[j]) - 1;

    // Double-sum form: exponent_j = -sum_{i<j} (r_{j-1}...r_{i+1} gamma_i)(h_{gamma_j})
    //                             = -sum_{i<j} gamma_i(w_i(h_{tau_j})).
    std::vector<std::int64_t> form2(n, 0);
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < j; ++i) {
            AffineCoroot h = tau[j];
            for (size_t k = 0; k <= i; ++k) h = reflect(word.letters[k], h);
            form2[j] -= pair_alpha(word.letters[i], h);
        }
    }

    if (form1 != form2)
        throw std::logic_error("Haar exponent closed forms disagree");
    return form1;
}

MatrixLoop weyl_representative(const AffineWord& word) {
    MatrixLoop m = MatrixLoop::identity();
    for (int l : word.letters) m = m * (l == 0 ? weyl_s0() : weyl_s1());
    return m;
}

MatrixLoop diagram_automorphism(const MatrixLoop& g) {
    return MatrixLoop(g.at(1, 1), g.at(1, 0).shifted(-1),
                      g.at(0, 1).shifted(1), g.at(0, 0));
}

CellCoordinates cell_dimension_and_coords(const AffineWord& word) {
    if (!word.reduced()) throw DomainError("word is not reduced");
    CellCoordinates cc;
    cc.dimension = static_cast<int>(word.size());
    if (word.size() == 0) {
        cc.text = "point";
        return cc;
    }
    int n = cc.dimension;
    if (word.letters[0] == 0) {
        cc.entry_row = 0;
        cc.entry_col = 1;
        cc.deg_lo = -n;
        cc.deg_hi = -1;
        cc.text = "[[1, x_1 z^-1 + ... + x_" + std::to_string(n) + " z^-" +
                  std::to_string(n) + "], [0, 1]]";
    } else {
        cc.entry_row = 1;
        cc.entry_col = 0;
        cc.deg_lo = -(n - 1);
        cc.deg_hi = 0;
        cc.text = "[[1, 0], [y_0 + ... + y_" + std::to_string(n - 1) + " z^-" +
                  std::to_string(n - 1) + ", 1]]";
    }
    return cc;
}

}  // namespace loopfact
