#pragma once

// Smith normal form and prime-field rank over exact arbitrary-precision
// integers. Entries of Fox matrices for twist-spun sums overflow 64 bits,
// so everything here runs on cpp_int.

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace knotcert {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

inline BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Nonzero invariant factors d1 | d2 | ... of an integer matrix.
inline std::vector<BigInt> smith_normal_form(IntMatrix m) {
    std::vector<BigInt> divisors;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        // locate a pivot: smallest nonzero absolute value in the submatrix
        size_t pi = r, pj = c;
        BigInt best = 0;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = c; j < cols; ++j) {
                BigInt a = m[i][j] < 0 ? BigInt(-m[i][j]) : m[i][j];
                if (a != 0 && (best == 0 || a < best)) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        std::swap(m[pi], m[r]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][c]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                BigInt q = m[i][c] / m[r][c];
                for (size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) {  // remainder smaller than pivot: swap up
                    std::swap(m[i], m[r]);
                    clean = false;
                }
            }
            for (size_t j = c + 1; j < cols; ++j) {
                if (m[r][j] == 0) continue;
                BigInt q = m[r][j] / m[r][c];
                for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
                if (m[r][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][j], m[i][c]);
                    clean = false;
                }
            }
        }
        // divisibility: pivot must divide every remaining entry
        bool fixed = true;
        for (size_t i = r + 1; i < rows && fixed; ++i)
            for (size_t j = c + 1; j < cols && fixed; ++j)
                if (m[i][j] % m[r][c] != 0) {
                    for (size_t jj = c; jj < cols; ++jj) m[r][jj] += m[i][jj];
                    fixed = false;
                }
        if (!fixed) continue;  // re-run elimination at same pivot
        BigInt d = m[r][c] < 0 ? BigInt(-m[r][c]) : m[r][c];
        divisors.push_back(d);
        ++r;
        ++c;
    }
    return divisors;
}

struct AbelianInvariants {
    std::vector<BigInt> torsion;  // invariant factors > 1
    int free_rank = 0;

    bool is_infinite_cyclic() const { return torsion.empty() && free_rank == 1; }
    bool is_trivial() const { return torsion.empty() && free_rank == 0; }
};

// Cokernel of the relator exponent matrix acting on Z^gen_count.
inline AbelianInvariants abelian_invariants(const IntMatrix& exponent_matrix, int gen_count) {
    auto d = smith_normal_form(exponent_matrix);
    AbelianInvariants out;
    out.free_rank = gen_count - static_cast<int>(d.size());
    for (const auto& x : d)
        if (x > 1) out.torsion.push_back(x);
    return out;
}

inline IntMatrix to_big(const std::vector<std::vector<long long>>& m) {
    IntMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) {
        std::vector<BigInt> r;
        r.reserve(row.size());
        for (long long v : row) r.emplace_back(v);
        out.push_back(std::move(r));
    }
    return out;
}

// Rank over F_p by Gaussian elimination.
inline int rank_mod_p(IntMatrix m, long long p) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    auto norm = [&](BigInt v) {
        BigInt r = v % p;
        if (r < 0) r += p;
        return r;
    };
    for (auto& row : m)
        for (auto& v : row) v = norm(v);
    int rank = 0;
    size_t pr = 0;
    for (size_t c = 0; c < cols && pr < rows; ++c) {
        size_t pivot = pr;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[pr]);
        // modular inverse by Fermat
        BigInt inv = 1, base = m[pr][c], e = p - 2;
        while (e > 0) {
            if (e % 2 == 1) inv = inv * base % p;
            base = base * base % p;
            e /= 2;
        }
        for (size_t j = c; j < cols; ++j) m[pr][j] = m[pr][j] * inv % p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == pr || m[i][c] == 0) continue;
            BigInt f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = norm(m[i][j] - f * m[pr][j]);
        }
        ++pr;
        ++rank;
    }
    return rank;
}

// gcd of all k x k minors (k-th determinantal divisor) = product of the
// first k invariant factors when rank >= k, else 0. Empty minor set for
// k = 0 gives 1.
inline BigInt determinantal_divisor(const IntMatrix& m, int k) {
    if (k == 0) return 1;
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    if (static_cast<size_t>(k) > rows || static_cast<size_t>(k) > cols) return 0;
    auto d = smith_normal_form(m);
    if (static_cast<int>(d.size()) < k) return 0;
    BigInt prod = 1;
    for (int i = 0; i < k; ++i) prod *= d[static_cast<size_t>(i)];
    return prod;
}

}  // namespace knotcert
