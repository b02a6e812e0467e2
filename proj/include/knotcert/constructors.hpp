#pragma once

// Presentation-level constructors: connected sums, twist spins, ribbon
// presentations, and the two relator-adding moves (stabilization and
// finger move), plus the dihedral-product target group used by the
// lower-bound pipeline.

#include <stdexcept>

#include "knotcert/dihedral_product.hpp"
#include "knotcert/presentation.hpp"

namespace knotcert {

inline Presentation unknot_presentation() {
    return Presentation::all_meridian(1, {});
}

namespace detail {

inline Word shift_generators(const Word& w, int offset) {
    std::vector<Syllable> out;
    out.reserve(w.syllables().size());
    for (const auto& s : w.syllables()) out.push_back({s.gen + offset, s.exp});
    return Word::reduce(out);
}

}  // namespace detail

// Disjoint union of generators and relators plus the identification
// relator x1^-1 x2 of the two distinguished meridians. Both meridians
// stay as generators; the result's distinguished meridian is x1.
inline Presentation connected_sum(const Presentation& P1, const Presentation& P2) {
    int offset = P1.gen_count();
    std::vector<Word> relators = P1.relators();
    for (const auto& r : P2.relators()) relators.push_back(detail::shift_generators(r, offset));
    relators.push_back(Word::generator(P1.distinguished_meridian(), -1) *
                       Word::generator(P2.distinguished_meridian() + offset));
    std::vector<bool> flags = P1.meridian_flags();
    for (bool b : P2.meridian_flags()) flags.push_back(b);
    return Presentation(P1.gen_count() + P2.gen_count(), std::move(relators), std::move(flags),
                        P1.distinguished_meridian());
}

// n-twist spin: for n >= 1 the n-th power of the distinguished meridian
// becomes central, expressed as one commutator relator per generator.
// n = 0 is the (untwisted) spin, whose group is the classical group.
inline Presentation twist_spin(const Presentation& P, long long n) {
    if (n < 0) throw std::invalid_argument("twist count must be nonnegative");
    if (n == 0) return P;
    Presentation out = P;
    Word xn = Word::generator(P.distinguished_meridian(), n);
    for (GenId g = 0; g < P.gen_count(); ++g)
        out.add_relator(commutator(xn, Word::generator(g)));
    return out;
}

// Ribbon 2-knot with the given fusion count: meridians m_1..m_{n+1}
// (generators 0..n), relators m_j^{g_j} = m_{j+1}.
inline Presentation ribbon_presentation(int fusion_count, const std::vector<Word>& conjugators) {
    if (fusion_count < 0) throw std::invalid_argument("fusion count must be nonnegative");
    if (static_cast<int>(conjugators.size()) != fusion_count)
        throw std::invalid_argument("need one conjugator per fusion");
    int n = fusion_count;
    std::vector<Word> relators;
    for (int j = 0; j < n; ++j) {
        const Word& g = conjugators[static_cast<size_t>(j)];
        if (g.max_generator() >= n + 1)
            throw std::invalid_argument("conjugator uses unknown meridian");
        relators.push_back(conjugate(Word::generator(j), g) * Word::generator(j + 1, -1));
    }
    return Presentation::all_meridian(n + 1, std::move(relators));
}

// Stabilization relation g^-1 a g b^-1 (identifies the meridians a, b
// after conjugation). The tubing relation has the identical form.
inline Presentation add_stabilization_relation(const Presentation& P, const Word& g, GenId a,
                                               GenId b) {
    if (!P.is_meridian(a) || !P.is_meridian(b))
        throw std::invalid_argument("stabilization endpoints must be meridians");
    Presentation out = P;
    out.add_relator(g.inverse() * Word::generator(a) * g * Word::generator(b, -1));
    return out;
}

// Finger move relation [a, g^-1 b g] (makes the conjugated meridians
// commute instead of coincide).
inline Presentation add_finger_move_relation(const Presentation& P, const Word& g, GenId a,
                                             GenId b) {
    if (!P.is_meridian(a) || !P.is_meridian(b))
        throw std::invalid_argument("finger move endpoints must be meridians");
    Presentation out = P;
    out.add_relator(commutator(Word::generator(a), conjugate(Word::generator(b), g)));
    return out;
}

namespace detail {

inline void require_odd_prime_ll(long long p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("need an odd prime");
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw std::invalid_argument("need an odd prime");
}

}  // namespace detail

// G = (Z_p1 * Z_p2) x| Z_2 as a presentation: generators z (index 0,
// the distinguished meridian), a1 (index 1), a2 (index 2); relators
// z^2, a1^p1, a2^p2, z a1 z a1, z a2 z a2 (encoding z a_i z = a_i^-1).
inline Presentation dihedral_product_group(long long p1, long long p2) {
    detail::require_odd_prime_ll(p1);
    detail::require_odd_prime_ll(p2);
    Word z = Word::generator(0), a1 = Word::generator(1), a2 = Word::generator(2);
    std::vector<Word> relators = {
        z.pow(2), a1.pow(p1), a2.pow(p2), z * a1 * z * a1, z * a2 * z * a2,
    };
    return Presentation(3, std::move(relators), {true, false, false}, 0);
}

// Image of a free word under a generator assignment into G, computed in
// exact normal form.
inline DihedralProductElement evaluate_in_G(long long p1, long long p2, const Word& w,
                                            const std::vector<DihedralProductElement>& assignment) {
    DihedralProductElement acc;  // identity
    for (const auto& s : w.syllables()) {
        if (s.gen < 0 || static_cast<size_t>(s.gen) >= assignment.size())
            throw std::out_of_range("unassigned generator");
        const DihedralProductElement& img = assignment[static_cast<size_t>(s.gen)];
        DihedralProductElement base =
            s.exp > 0 ? img : nf_inverse(p1, p2, img);
        long long k = s.exp > 0 ? s.exp : -s.exp;
        for (long long i = 0; i < k; ++i) acc = nf_multiply(p1, p2, acc, base);
    }
    return acc;
}

}  // namespace knotcert
