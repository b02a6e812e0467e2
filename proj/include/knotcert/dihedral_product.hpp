#pragma once

// Exact arithmetic in G = (Z_p1 * Z_p2) x| Z_2, where the Z_2 generator
// z inverts every letter of the free-product part. Elements are stored
// in normal form u * z^eps with u an alternating word in the two cyclic
// factors; this solves the word problem in G exactly.

#include <stdexcept>
#include <string>
#include <vector>

namespace knotcert {

struct DihedralLetter {
    int factor;         // 1 or 2
    long long exponent; // reduced mod p_factor, nonzero
    friend bool operator==(const DihedralLetter&, const DihedralLetter&) = default;
};

struct DihedralProductElement {
    std::vector<DihedralLetter> word;  // alternating factors
    bool z_flag = false;

    bool is_identity() const { return word.empty() && !z_flag; }
    friend bool operator==(const DihedralProductElement&, const DihedralProductElement&) = default;

    std::string str() const {
        std::string s;
        for (const auto& l : word) {
            s += l.factor == 1 ? "a1^" : "a2^";
            s += std::to_string(l.exponent);
            s += '.';
        }
        if (z_flag) s += "z";
        if (s.empty()) s = "1";
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }
};

namespace detail {

inline long long mod_p(long long e, long long p) {
    long long r = e % p;
    if (r < 0) r += p;
    return r;
}

inline void push_dihedral_letter(std::vector<DihedralLetter>& w, int factor, long long exp,
                                 long long p1, long long p2) {
    long long p = factor == 1 ? p1 : p2;
    exp = mod_p(exp, p);
    if (exp == 0) return;
    if (!w.empty() && w.back().factor == factor) {
        long long merged = mod_p(w.back().exponent + exp, p);
        w.pop_back();
        if (merged != 0) push_dihedral_letter(w, factor, merged, p1, p2);
        return;
    }
    w.push_back({factor, exp});
}

}  // namespace detail

inline DihedralProductElement nf_make(long long p1, long long p2,
                                      const std::vector<DihedralLetter>& letters,
                                      bool z_flag = false) {
    DihedralProductElement e;
    for (const auto& l : letters) {
        if (l.factor != 1 && l.factor != 2)
            throw std::invalid_argument("factor must be 1 or 2");
        detail::push_dihedral_letter(e.word, l.factor, l.exponent, p1, p2);
    }
    e.z_flag = z_flag;
    return e;
}

// (u z^e1)(v z^e2) = u * v^{sigma^e1} * z^{e1+e2}, where sigma inverts
// every letter exponent.
inline DihedralProductElement nf_multiply(long long p1, long long p2,
                                          const DihedralProductElement& u,
                                          const DihedralProductElement& v) {
    DihedralProductElement out;
    out.word = u.word;
    for (const auto& l : v.word) {
        long long e = u.z_flag ? -l.exponent : l.exponent;
        detail::push_dihedral_letter(out.word, l.factor, e, p1, p2);
    }
    out.z_flag = u.z_flag != v.z_flag;
    return out;
}

inline DihedralProductElement nf_inverse(long long p1, long long p2,
                                         const DihedralProductElement& u) {
    // (u z^e)^-1 = z^e u^-1 z^e z^e = (u^-1)^{sigma^e} z^e
    DihedralProductElement out;
    for (auto it = u.word.rbegin(); it != u.word.rend(); ++it) {
        long long e = -it->exponent;
        if (u.z_flag) e = -e;
        detail::push_dihedral_letter(out.word, it->factor, e, p1, p2);
    }
    out.z_flag = u.z_flag;
    return out;
}

}  // namespace knotcert
