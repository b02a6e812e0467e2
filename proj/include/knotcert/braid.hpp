#pragma once

// Classical knots enter as braid words; the Wirtinger presentation of
// the closure is built by tracking, per strand position, the meridian
// word currently carried there. Two-bridge knots can instead be entered
// by even twist parameters, yielding the 2-generator 2-bridge
// presentation directly.

#include <numeric>
#include <stdexcept>
#include <vector>

#include "knotcert/presentation.hpp"

namespace knotcert {

struct BraidWord {
    std::vector<int> letters;  // +-i encodes sigma_i^{+-1}, 1-based
    int strand_count = 1;

    void validate() const {
        if (strand_count < 1) throw std::invalid_argument("braid needs a strand");
        for (int l : letters) {
            int a = l < 0 ? -l : l;
            if (a < 1 || a >= strand_count)
                throw std::invalid_argument("braid letter out of range");
        }
    }

    // Permutation of strand positions induced by the braid (top to bottom).
    std::vector<int> permutation() const {
        std::vector<int> perm(static_cast<size_t>(strand_count));
        std::iota(perm.begin(), perm.end(), 0);
        for (int l : letters) {
            int i = (l < 0 ? -l : l) - 1;
            std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(i + 1)]);
        }
        return perm;
    }

    int closure_components() const {
        auto perm = permutation();
        std::vector<bool> seen(perm.size(), false);
        int comps = 0;
        for (size_t s = 0; s < perm.size(); ++s) {
            if (seen[s]) continue;
            ++comps;
            size_t cur = s;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = static_cast<size_t>(perm[cur]);
            }
        }
        return comps;
    }
};

// Wirtinger presentation of the braid closure: one meridian generator
// per top strand; each crossing rewrites the meridian word carried by
// the under strand as a conjugate by the over strand's word; closing up
// identifies the bottom words with the top generators.
inline Presentation wirtinger_from_braid(const BraidWord& b) {
    b.validate();
    if (b.closure_components() != 1)
        throw std::invalid_argument("braid closure is a link, not a knot");
    int n = b.strand_count;
    std::vector<Word> cur;
    cur.reserve(static_cast<size_t>(n));
    for (GenId g = 0; g < n; ++g) cur.push_back(Word::generator(g));

    std::vector<Word> relators;
    for (int l : b.letters) {
        int i = (l < 0 ? -l : l) - 1;
        Word& left = cur[static_cast<size_t>(i)];
        Word& right = cur[static_cast<size_t>(i + 1)];
        if (l > 0) {
            // positive crossing: strand at i goes over
            Word over = left;
            Word under = right;
            left = over * under * over.inverse();
            right = over;
        } else {
            Word over = right;
            Word under = left;
            right = over.inverse() * under * over;
            left = over;
        }
    }
    for (GenId g = 0; g < n; ++g)
        relators.push_back(cur[static_cast<size_t>(g)] * Word::generator(g).inverse());
    return Presentation::all_meridian(n, std::move(relators));
}

namespace detail {

// Continued-fraction value of even twist parameters as a 2-bridge
// fraction p/q with p odd (a knot rather than a link).
inline std::pair<long long, long long> two_bridge_fraction(const std::vector<long long>& params) {
    if (params.empty()) throw std::invalid_argument("two-bridge parameters empty");
    for (long long a : params)
        if (a == 0 || a % 2 != 0) throw std::invalid_argument("parameters must be nonzero even");
    // [a1, a2, ..., am] -> a1 + 1/(a2 + 1/(...))
    long long num = params.back(), den = 1;
    for (size_t i = params.size() - 1; i-- > 0;) {
        long long new_num = params[i] * num + den;
        den = num;
        num = new_num;
    }
    if (num < 0) {
        num = -num;
        den = -den;
    }
    den %= num;
    if (den < 0) den += num;
    if (num % 2 == 0) throw std::invalid_argument("parameters describe a link, not a knot");
    return {num, den};
}

}  // namespace detail

// 2-bridge knot b(p,q) from even twist parameters. Presentation is the
// standard 2-generator one: < a, b | a w b^-1 w^-1 > with
// w = b^{e1} a^{e2} b^{e3} ... a^{e_{p-1}}, e_i = (-1)^{floor(i q / p)}.
inline Presentation two_bridge(const std::vector<long long>& params) {
    auto [p, q] = detail::two_bridge_fraction(params);
    Word w;
    for (long long i = 1; i < p; ++i) {
        long long e = ((i * q) / p) % 2 == 0 ? 1 : -1;
        GenId g = i % 2 == 1 ? 1 : 0;  // alternate b, a, b, ...
        w = w * Word::generator(g, e);
    }
    Word a = Word::generator(0), b = Word::generator(1);
    Word relator = a * w * b.inverse() * w.inverse();
    return Presentation::all_meridian(2, {relator});
}

}  // namespace knotcert
