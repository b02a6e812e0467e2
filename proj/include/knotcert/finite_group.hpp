#pragma once

// Finite quotient targets as concrete permutation groups, plus the
// backtracking homomorphism search. Targets: symmetric groups S_n
// (n <= 8), PSL(2, l) for prime l <= 13 acting on the projective line,
// and explicit Cayley tables via the regular representation.

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotcert/coset.hpp"
#include "knotcert/presentation.hpp"

namespace knotcert {

using Perm = std::vector<int>;

inline Perm perm_identity(int degree) {
    Perm p(static_cast<size_t>(degree));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// (a*b)(x) = b(a(x)): apply a first, then b.
inline Perm perm_compose(const Perm& a, const Perm& b) {
    Perm out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = b[static_cast<size_t>(a[i])];
    return out;
}

inline Perm perm_inverse(const Perm& a) {
    Perm out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[static_cast<size_t>(a[i])] = static_cast<int>(i);
    return out;
}

inline bool perm_is_identity(const Perm& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != static_cast<int>(i)) return false;
    return true;
}

inline long long perm_order(const Perm& a) {
    Perm cur = a;
    long long n = 1;
    while (!perm_is_identity(cur)) {
        cur = perm_compose(cur, a);
        ++n;
    }
    return n;
}

inline std::string perm_str(const Perm& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(a[i]);
    }
    return s;
}

inline Perm perm_parse(const std::string& text) {
    Perm p;
    size_t i = 0;
    while (i < text.size()) {
        size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        p.push_back(std::stoi(text.substr(i, j - i)));
        i = j + 1;
    }
    return p;
}

struct FiniteGroupSpec {
    enum class Kind { Symmetric, PSL2, Cayley };
    Kind kind = Kind::Symmetric;
    int parameter = 3;                        // n for S_n, l for PSL(2,l)
    std::vector<std::vector<int>> cayley;     // Kind::Cayley only

    static FiniteGroupSpec symmetric(int n) {
        if (n < 1 || n > 8) throw std::invalid_argument("S_n supported for n <= 8");
        return {Kind::Symmetric, n, {}};
    }
    static FiniteGroupSpec psl2(int l) {
        if (l != 2 && l != 3 && l != 5 && l != 7 && l != 11 && l != 13)
            throw std::invalid_argument("PSL(2,l) supported for prime l <= 13");
        return {Kind::PSL2, l, {}};
    }
    static FiniteGroupSpec from_cayley(std::vector<std::vector<int>> table) {
        return {Kind::Cayley, static_cast<int>(table.size()), std::move(table)};
    }

    std::string name() const {
        switch (kind) {
            case Kind::Symmetric: return "S" + std::to_string(parameter);
            case Kind::PSL2: return "PSL(2," + std::to_string(parameter) + ")";
            case Kind::Cayley: return "cayley" + std::to_string(parameter);
        }
        return "?";
    }
};

namespace detail {

inline std::vector<Perm> symmetric_group_elements(int n) {
    std::vector<Perm> out;
    Perm p = perm_identity(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// PSL(2,l) on the projective line {0..l-1, l = infinity}, generated by
// x -> x+1 and x -> -1/x; elements collected by breadth-first closure.
inline std::vector<Perm> psl2_elements(int l) {
    int deg = l + 1;
    const int INF = l;
    auto inv_mod = [&](int a) {
        int r = 1, base = a % l, e = l - 2;
        while (e > 0) {
            if (e & 1) r = r * base % l;
            base = base * base % l;
            e >>= 1;
        }
        return r;
    };
    Perm shift(static_cast<size_t>(deg)), flip(static_cast<size_t>(deg));
    for (int x = 0; x < l; ++x) shift[static_cast<size_t>(x)] = (x + 1) % l;
    shift[static_cast<size_t>(INF)] = INF;
    flip[0] = INF;
    flip[static_cast<size_t>(INF)] = 0;
    for (int x = 1; x < l; ++x) flip[static_cast<size_t>(x)] = (l - inv_mod(x)) % l;

    std::set<Perm> seen = {perm_identity(deg)};
    std::vector<Perm> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& g : frontier)
            for (const Perm* s : {&shift, &flip}) {
                Perm h = perm_compose(g, *s);
                if (seen.insert(h).second) next.push_back(h);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

inline std::vector<Perm> cayley_elements(const std::vector<std::vector<int>>& table) {
    int n = static_cast<int>(table.size());
    std::vector<Perm> out;
    out.reserve(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) {
        Perm p(static_cast<size_t>(n));
        for (int h = 0; h < n; ++h) {
            int v = table[static_cast<size_t>(h)][static_cast<size_t>(g)];  // h * g
            if (v < 0 || v >= n) throw std::invalid_argument("malformed Cayley table");
            p[static_cast<size_t>(h)] = v;
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace detail

inline std::vector<Perm> finite_group_elements(const FiniteGroupSpec& spec) {
    switch (spec.kind) {
        case FiniteGroupSpec::Kind::Symmetric:
            return detail::symmetric_group_elements(spec.parameter);
        case FiniteGroupSpec::Kind::PSL2:
            return detail::psl2_elements(spec.parameter);
        case FiniteGroupSpec::Kind::Cayley:
            return detail::cayley_elements(spec.cayley);
    }
    throw std::invalid_argument("unsupported finite group spec");
}

// A homomorphism into a concrete permutation group: one image per
// presentation generator.
struct FiniteHom {
    std::string target_name;
    std::vector<Perm> images;

    Perm apply(const Word& w) const {
        if (images.empty()) throw std::logic_error("empty homomorphism");
        Perm acc = perm_identity(static_cast<int>(images[0].size()));
        for (const auto& s : w.syllables()) {
            const Perm& img = images.at(static_cast<size_t>(s.gen));
            Perm base = s.exp > 0 ? img : perm_inverse(img);
            long long k = s.exp > 0 ? s.exp : -s.exp;
            for (long long i = 0; i < k; ++i) acc = perm_compose(acc, base);
        }
        return acc;
    }

    bool kills(const Word& w) const { return perm_is_identity(apply(w)); }
};

struct OrderConstraint {
    GenId gen;
    long long required_order;
};

// Backtracking search for homomorphisms: generator images chosen from
// the target's elements (filtered by order constraints), relators
// checked as soon as all their generators are assigned. Deterministic:
// candidates are tried in the sorted element order.
inline std::vector<FiniteHom> hom_search(const Presentation& P, const FiniteGroupSpec& target,
                                         const std::vector<OrderConstraint>& constraints,
                                         const Budget& budget, size_t max_results = 1,
                                         const std::vector<Word>& extra_relators = {}) {
    std::vector<Perm> elements = finite_group_elements(target);
    std::sort(elements.begin(), elements.end());
    int n = P.gen_count();

    std::vector<std::vector<Perm>> candidates(static_cast<size_t>(n));
    for (GenId g = 0; g < n; ++g) {
        long long want = 0;
        for (const auto& c : constraints)
            if (c.gen == g) want = c.required_order;
        for (const auto& e : elements)
            if (want == 0 || perm_order(e) == want)
                candidates[static_cast<size_t>(g)].push_back(e);
    }

    std::vector<Word> relators = P.relators();
    for (const auto& r : extra_relators) relators.push_back(r.cyclically_reduced());

    // relators checkable once generators 0..g are assigned
    std::vector<std::vector<const Word*>> check_at(static_cast<size_t>(n));
    for (const auto& r : relators) {
        GenId m = r.max_generator();
        if (m < 0) continue;
        check_at[static_cast<size_t>(m)].push_back(&r);
    }

    std::vector<FiniteHom> results;
    FiniteHom cur;
    cur.target_name = target.name();
    cur.images.resize(static_cast<size_t>(n));
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget.time_limit_seconds));

    std::function<bool(GenId)> rec = [&](GenId g) -> bool {
        if (g == n) {
            results.push_back(cur);
            return results.size() >= max_results;
        }
        if (std::chrono::steady_clock::now() > deadline) return true;
        for (const auto& e : candidates[static_cast<size_t>(g)]) {
            cur.images[static_cast<size_t>(g)] = e;
            bool ok = true;
            for (const Word* r : check_at[static_cast<size_t>(g)])
                if (!cur.kills(*r)) {
                    ok = false;
                    break;
                }
            if (ok && rec(g + 1)) return true;
        }
        return false;
    };
    rec(0);
    return results;
}

}  // namespace knotcert
