#pragma once

// Fox p-colorings as dihedral representations. A coloring assigns each
// meridian generator g a reflection z*r^{c_g} in D_p; a relator maps to
// the identity iff its letters fold to rotation 0, which is linear in
// the colors. The solution space always contains the constant colorings,
// so dimension >= 2 detects a nontrivial coloring.

#include <optional>
#include <stdexcept>

#include "knotcert/presentation.hpp"
#include "knotcert/snf.hpp"

namespace knotcert {

struct ColoringSpace {
    long long prime = 0;
    int dimension = 0;
    // Basis vectors of the solution space, one color entry per generator.
    std::vector<std::vector<long long>> basis;

    bool has_nontrivial() const { return dimension >= 2; }
};

namespace detail {

inline void require_odd_prime(long long p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be an odd prime");
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw std::invalid_argument("p must be an odd prime");
}

// Linear constraint rows over F_p, one per relator. Walking a relator
// letter by letter, the running product is z^eps * r^v with
// (z r^c)^{+-1} = z r^c and z r^c * z r^d = r^{d-c}; the relator holds
// iff eps ends even and v = 0, giving coefficients +-1 on the colors.
inline IntMatrix coloring_system(const Presentation& P, long long p) {
    IntMatrix rows;
    for (const auto& rel : P.relators()) {
        long long eps = 0;
        std::vector<long long> coeff(static_cast<size_t>(P.gen_count()), 0);
        for (auto [g, sign] : rel.letters()) {
            (void)sign;  // reflections are involutions
            // multiplying z^eps r^v by z r^c gives z^{eps+1} r^{c - v}
            for (auto& x : coeff) x = -x;
            coeff[static_cast<size_t>(g)] += 1;
            eps ^= 1;
        }
        if (eps != 0)
            throw std::invalid_argument("relator has odd length; not an all-meridian relator");
        std::vector<BigInt> row;
        row.reserve(coeff.size());
        for (long long x : coeff) row.emplace_back(x);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Nullspace basis over F_p by reduced row echelon form.
inline std::vector<std::vector<long long>> nullspace_mod_p(IntMatrix m, long long p, int cols) {
    auto norm = [&](BigInt v) {
        BigInt r = v % p;
        if (r < 0) r += p;
        return r;
    };
    for (auto& row : m)
        for (auto& v : row) v = norm(v);
    size_t rows = m.size();
    std::vector<int> pivot_col;
    size_t pr = 0;
    for (int c = 0; c < cols && pr < rows; ++c) {
        size_t pivot = pr;
        while (pivot < rows && m[pivot][static_cast<size_t>(c)] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[pr]);
        BigInt inv = 1, base = m[pr][static_cast<size_t>(c)], e = p - 2;
        while (e > 0) {
            if (e % 2 == 1) inv = inv * base % p;
            base = base * base % p;
            e /= 2;
        }
        for (int j = 0; j < cols; ++j)
            m[pr][static_cast<size_t>(j)] = m[pr][static_cast<size_t>(j)] * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == pr || m[i][static_cast<size_t>(c)] == 0) continue;
            BigInt f = m[i][static_cast<size_t>(c)];
            for (int j = 0; j < cols; ++j)
                m[i][static_cast<size_t>(j)] =
                    norm(m[i][static_cast<size_t>(j)] - f * m[pr][static_cast<size_t>(j)]);
        }
        pivot_col.push_back(c);
        ++pr;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<long long>> basis;
    for (int free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[static_cast<size_t>(free_c)]) continue;
        std::vector<long long> v(static_cast<size_t>(cols), 0);
        v[static_cast<size_t>(free_c)] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) {
            BigInt val = norm(-m[i][static_cast<size_t>(free_c)]);
            v[static_cast<size_t>(pivot_col[i])] = static_cast<long long>(val);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

inline ColoringSpace coloring_space(const Presentation& P, long long p) {
    detail::require_odd_prime(p);
    if (!P.all_generators_meridian())
        throw std::invalid_argument("coloring_space needs an all-meridian presentation");
    ColoringSpace cs;
    cs.prime = p;
    cs.basis = detail::nullspace_mod_p(detail::coloring_system(P, p), p,
                                       P.gen_count());
    cs.dimension = static_cast<int>(cs.basis.size());
    return cs;
}

// A nontrivial coloring as color assignments: generator g maps to the
// reflection z*r^{colors[g]} in D_p, with the distinguished meridian on
// the base reflection z (color 0). Surjectivity needs some generator
// with a nonzero color. None when only constant colorings exist.
struct DihedralColoring {
    long long prime = 0;
    std::vector<long long> colors;
};

inline std::optional<DihedralColoring> dihedral_surjection(const Presentation& P, long long p) {
    ColoringSpace cs = coloring_space(P, p);
    if (!cs.has_nontrivial()) return std::nullopt;
    size_t dist = static_cast<size_t>(P.distinguished_meridian());
    for (const auto& b : cs.basis) {
        bool constant = true;
        for (long long c : b) constant = constant && c == b[0];
        if (constant) continue;
        // shift so the distinguished meridian lands on color 0
        DihedralColoring out;
        out.prime = p;
        out.colors.reserve(b.size());
        for (long long c : b) {
            long long v = (c - b[dist]) % p;
            if (v < 0) v += p;
            out.colors.push_back(v);
        }
        bool nonzero = false;
        for (long long c : out.colors) nonzero = nonzero || c != 0;
        if (nonzero) return out;
    }
    // basis vectors may be individually constant yet span nontrivially
    if (cs.dimension >= 2) {
        DihedralColoring out;
        out.prime = p;
        out.colors.assign(static_cast<size_t>(P.gen_count()), 0);
        for (const auto& b : cs.basis) {
            for (size_t i = 0; i < b.size(); ++i)
                out.colors[i] = (out.colors[i] + b[i]) % p;
        }
        long long base = out.colors[dist];
        bool nonzero = false;
        for (auto& c : out.colors) {
            c = (c - base) % p;
            if (c < 0) c += p;
            nonzero = nonzero || c != 0;
        }
        if (nonzero) return out;
    }
    return std::nullopt;
}

// Evaluates a word through a coloring in D_p, returning (z-parity,
// rotation); used to replay-check that relators map to the identity.
inline std::pair<int, long long> dihedral_evaluate(const Word& w, const DihedralColoring& col) {
    int eps = 0;
    long long v = 0;
    for (auto [g, sign] : w.letters()) {
        (void)sign;
        long long c = col.colors[static_cast<size_t>(g)];
        // (z^eps r^v) * (z r^c) = z^{eps+1} r^{c-v}
        v = (c - v) % col.prime;
        if (v < 0) v += col.prime;
        eps ^= 1;
    }
    return {eps, v};
}

}  // namespace knotcert
