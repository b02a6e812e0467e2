#pragma once

// Fox free differential calculus, Alexander matrices over Laurent
// polynomials, the determinant (first elementary ideal evaluated at
// t = -1), and the Nakanishi-index lower bound.

#include <map>
#include <stdexcept>

#include "knotcert/laurent.hpp"
#include "knotcert/presentation.hpp"

namespace knotcert {

// Finite formal Z-linear combination of free-group words.
class GroupRingElement {
public:
    GroupRingElement() = default;

    static GroupRingElement term(const Word& w, const BigInt& c = 1) {
        GroupRingElement e;
        e.add(w, c);
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, BigInt, WordLenLex>& terms() const { return terms_; }

    GroupRingElement operator+(const GroupRingElement& o) const {
        GroupRingElement r = *this;
        for (const auto& [w, c] : o.terms_) r.add(w, c);
        return r;
    }

    GroupRingElement operator-(const GroupRingElement& o) const {
        GroupRingElement r = *this;
        for (const auto& [w, c] : o.terms_) r.add(w, -c);
        return r;
    }

    // Left multiplication by a group element.
    friend GroupRingElement operator*(const Word& u, const GroupRingElement& e) {
        GroupRingElement r;
        for (const auto& [w, c] : e.terms_) r.add(u * w, c);
        return r;
    }

    friend GroupRingElement operator*(const GroupRingElement& e, const Word& u) {
        GroupRingElement r;
        for (const auto& [w, c] : e.terms_) r.add(w * u, c);
        return r;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.terms_ == b.terms_;
    }

    // Abelianization sending every generator to t.
    LaurentPoly abelianize_to_t() const {
        LaurentPoly p;
        for (const auto& [w, c] : terms_)
            p = p + LaurentPoly::monomial(c, static_cast<int>(w.total_exponent()));
        return p;
    }

    void add(const Word& w, const BigInt& c) {
        if (c == 0) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    std::map<Word, BigInt, WordLenLex> terms_;
};

// d/dg with d(g)/dg = 1, d(h)/dg = 0, d(g^-1)/dg = -g^-1 and the
// product rule d(uv) = du + u.dv. Syllable powers are closed-form:
// d(g^e)/dg = (1 + g + ... + g^{e-1}) for e > 0, -(g^-1 + ... + g^e) for e < 0.
inline GroupRingElement fox_derivative(const Word& w, GenId g) {
    GroupRingElement acc;
    Word prefix;
    for (const auto& s : w.syllables()) {
        if (s.gen == g) {
            if (s.exp > 0) {
                for (long long k = 0; k < s.exp; ++k)
                    acc.add(prefix * Word::generator(g, k), 1);
            } else {
                for (long long k = -1; k >= s.exp; --k)
                    acc.add(prefix * Word::generator(g, k), -1);
            }
        }
        prefix = prefix * Word::generator(s.gen, s.exp);
    }
    return acc;
}

// Relator-by-generator matrix of abelianized Fox derivatives, every
// generator sent to t. Requires an all-meridian presentation so that the
// single-variable abelianization is the honest one.
inline LaurentMatrix alexander_matrix(const Presentation& P) {
    if (!P.all_generators_meridian())
        throw std::invalid_argument("alexander_matrix needs an all-meridian presentation");
    LaurentMatrix m(static_cast<int>(P.relators().size()), P.gen_count());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            m.at(i, j) = fox_derivative(P.relators()[static_cast<size_t>(i)], j).abelianize_to_t();
    return m;
}

// Positive generator of the first elementary ideal (all (n-1) x (n-1)
// minors) evaluated at t = -1. Evaluation commutes with taking minors,
// so the gcd of evaluated minors is the (n-1)-th determinantal divisor
// of the integer matrix A(-1). The unknot's empty minor set gives 1.
inline BigInt determinant(const Presentation& P) {
    LaurentMatrix a = alexander_matrix(P);
    int k = P.gen_count() - 1;
    if (k == 0) return 1;
    BigInt d = determinantal_divisor(a.evaluated(-1), k);
    return d < 0 ? BigInt(-d) : d;
}

// (n-1) - rank_{F_p} of A(-1) with one meridian column deleted: the
// dimension of the Alexander module's fiber at the maximal ideal
// (t+1, p), a lower bound for the Nakanishi index.
inline int nakanishi_lower_bound(const Presentation& P, long long p) {
    LaurentMatrix a = alexander_matrix(P);
    IntMatrix full = a.evaluated(-1);
    int drop = P.distinguished_meridian();
    IntMatrix cut;
    cut.reserve(full.size());
    for (const auto& row : full) {
        std::vector<BigInt> r;
        r.reserve(row.size() - 1);
        for (size_t j = 0; j < row.size(); ++j)
            if (static_cast<int>(j) != drop) r.push_back(row[j]);
        cut.push_back(std::move(r));
    }
    int n = P.gen_count();
    return (n - 1) - rank_mod_p(cut, p);
}

}  // namespace knotcert
