#pragma once

// Certification engine: infinite-cyclic certificates, bound-witness
// searches for the Ma-Qiu index / algebraic stabilization number /
// algebraic Casson-Whitney number, nonabelian-quotient certificates,
// the two-summand lower-bound pipeline, and non-additivity verification.
// Every positive result is a replayable Certificate; Inconclusive is a
// first-class outcome (std::nullopt) and never a proof of a negative.

#include <atomic>
#include <optional>
#include <thread>

#include <json.hpp>

#include "knotcert/coloring.hpp"
#include "knotcert/constructors.hpp"
#include "knotcert/coset.hpp"
#include "knotcert/finite_group.hpp"
#include "knotcert/fox.hpp"

namespace knotcert {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::json;

inline Json presentation_to_json(const Presentation& P) {
    Json j;
    j["gens"] = P.gen_count();
    std::string flags;
    for (bool b : P.meridian_flags()) flags += b ? '1' : '0';
    j["meridian"] = flags;
    j["distinguished"] = P.distinguished_meridian();
    std::vector<std::string> rels;
    for (const auto& r : P.relators()) rels.push_back(r.str());
    j["relators"] = rels;
    return j;
}

inline Presentation presentation_from_json(const Json& j) {
    int gens = j.at("gens").get<int>();
    std::string flags = j.at("meridian").get<std::string>();
    std::vector<bool> mf;
    for (char c : flags) mf.push_back(c == '1');
    std::vector<Word> rels;
    for (const auto& r : j.at("relators")) rels.push_back(Word::parse(r.get<std::string>()));
    return Presentation(gens, std::move(rels), std::move(mf), j.at("distinguished").get<int>());
}

struct Certificate {
    enum class Kind { InfiniteCyclic, NonTrivialQuotient, NonAbelianQuotient, BoundWitness };
    Kind kind = Kind::InfiniteCyclic;
    std::string presentation_hash;
    Json payload;
    Json replay_data;
    std::string tool_version = kToolVersion;

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::InfiniteCyclic: return "infinite_cyclic";
            case Kind::NonTrivialQuotient: return "nontrivial_quotient";
            case Kind::NonAbelianQuotient: return "nonabelian_quotient";
            case Kind::BoundWitness: return "bound_witness";
        }
        return "?";
    }

    static Kind kind_from_name(const std::string& s) {
        if (s == "infinite_cyclic") return Kind::InfiniteCyclic;
        if (s == "nontrivial_quotient") return Kind::NonTrivialQuotient;
        if (s == "nonabelian_quotient") return Kind::NonAbelianQuotient;
        if (s == "bound_witness") return Kind::BoundWitness;
        throw std::invalid_argument("unknown certificate kind: " + s);
    }

    Json to_json() const {
        return Json{{"kind", kind_name(kind)},
                    {"presentation_hash", presentation_hash},
                    {"payload", payload},
                    {"replay_data", replay_data},
                    {"tool_version", tool_version}};
    }

    static Certificate from_json(const Json& j) {
        Certificate c;
        c.kind = kind_from_name(j.at("kind").get<std::string>());
        c.presentation_hash = j.at("presentation_hash").get<std::string>();
        c.payload = j.at("payload");
        c.replay_data = j.at("replay_data");
        c.tool_version = j.at("tool_version").get<std::string>();
        return c;
    }
};

enum class UpperKind { MaQiu, ASt, AFw };

inline const char* upper_kind_name(UpperKind k) {
    switch (k) {
        case UpperKind::MaQiu: return "ma_qiu";
        case UpperKind::ASt: return "a_st";
        case UpperKind::AFw: return "a_fw";
    }
    return "?";
}

inline UpperKind upper_kind_from_name(const std::string& s) {
    if (s == "ma_qiu") return UpperKind::MaQiu;
    if (s == "a_st") return UpperKind::ASt;
    if (s == "a_fw") return UpperKind::AFw;
    throw std::invalid_argument("unknown bound kind: " + s);
}

// Relator added for one witness word w with base meridian x:
// ma_qiu kills w itself; a_st identifies x with x^w; a_fw makes x and
// x^w commute.
inline Word kind_relator(UpperKind kind, GenId x, const Word& w) {
    Word xg = Word::generator(x);
    switch (kind) {
        case UpperKind::MaQiu: return w;
        case UpperKind::ASt: return commutator(xg, w);  // x^w = x  <=>  [x,w] = 1
        case UpperKind::AFw: return commutator(xg, conjugate(xg, w));
    }
    throw std::logic_error("unreachable");
}

// The single relator combining per-summand witnesses: [x, w1 w2 ... wn]
// for a_st and [x, x^{wn ... w1}] for a_fw.
inline Word combined_relator(const std::vector<Word>& ws, UpperKind kind, GenId x = 0) {
    if (ws.empty()) throw std::invalid_argument("combined_relator needs witnesses");
    Word xg = Word::generator(x);
    if (kind == UpperKind::ASt) {
        Word prod;
        for (const auto& w : ws) prod = prod * w;
        return commutator(xg, prod);
    }
    if (kind == UpperKind::AFw) {
        Word prod;
        for (auto it = ws.rbegin(); it != ws.rend(); ++it) prod = prod * (*it);
        return commutator(xg, conjugate(xg, prod));
    }
    throw std::invalid_argument("combined_relator supports a_st and a_fw");
}

namespace detail {

inline Json coset_table_to_json(const CosetTable& t) {
    Json j;
    j["index"] = t.index;
    j["gen_count"] = t.gen_count;
    j["rows"] = t.rows;
    return j;
}

inline CosetTable coset_table_from_json(const Json& j) {
    CosetTable t;
    t.status = CosetTable::Status::Completed;
    t.index = j.at("index").get<long long>();
    t.gen_count = j.at("gen_count").get<int>();
    t.rows = j.at("rows").get<std::vector<std::vector<int>>>();
    return t;
}

}  // namespace detail

// Certifies the group infinite cyclic: the abelianization must be Z
// (Smith divisors all 1 with one zero column left over) and the
// distinguished meridian's cyclic subgroup must have index 1.
inline std::optional<Certificate> certify_infinite_cyclic(const Presentation& P,
                                                          const Budget& budget) {
    AbelianInvariants ab = abelian_invariants(to_big(P.exponent_matrix()), P.gen_count());
    if (!ab.is_infinite_cyclic()) return std::nullopt;
    std::vector<Word> sub = {Word::generator(P.distinguished_meridian())};
    CosetTable t = todd_coxeter(P, sub, budget);
    if (!t.completed() || t.index != 1) return std::nullopt;
    Certificate c;
    c.kind = Certificate::Kind::InfiniteCyclic;
    c.presentation_hash = P.hash_hex();
    c.payload = Json{{"abelianization", "Z"}, {"meridian_index", 1}};
    c.replay_data = Json{{"presentation", presentation_to_json(P)},
                         {"subgroup", Json::array({Word::generator(P.distinguished_meridian()).str()})},
                         {"coset_table", detail::coset_table_to_json(t)}};
    return c;
}

namespace detail {

// Deterministic parallel first-hit search: tests candidates by index
// with the given predicate and returns the smallest succeeding index.
// Serial (workers = 1) and parallel runs return identical results.
template <typename Pred>
inline std::optional<size_t> first_success(size_t count, int workers, const Pred& pred) {
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i)
            if (pred(i)) return i;
        return std::nullopt;
    }
    std::atomic<size_t> next{0};
    std::atomic<size_t> best{SIZE_MAX};
    auto run = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            if (i >= best.load()) return;  // a smaller witness already found
            if (pred(i)) {
                size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    size_t b = best.load();
    if (b == SIZE_MAX) return std::nullopt;
    return b;
}

}  // namespace detail

// Searches for the smallest c <= c_max such that adding c relators of
// the requested kind (over candidate conjugator tuples in
// length-then-lexicographic order) makes the group infinite cyclic.
// Escalating per-candidate coset caps keep the common case fast; the
// first witness in enumeration order is returned deterministically.
inline std::optional<Certificate> search_upper_bound(const Presentation& P, UpperKind kind,
                                                     int c_max, const Budget& budget,
                                                     int workers = 1) {
    if (c_max < 0) throw std::invalid_argument("c_max must be nonnegative");
    if (auto base = certify_infinite_cyclic(P, budget)) {
        Certificate c = *base;
        c.kind = Certificate::Kind::BoundWitness;
        c.payload = Json{{"bound_kind", upper_kind_name(kind)},
                         {"c", 0},
                         {"witnesses", Json::array()}};
        return c;
    }
    if (c_max == 0) return std::nullopt;

    GenId x = P.distinguished_meridian();
    std::vector<Word> cands = candidate_conjugators(
        P.gen_count(), x, budget.max_word_length,
        static_cast<size_t>(budget.max_candidates));
    // drop the identity: it contributes a trivial relator, so any tuple
    // using it is dominated by a smaller c already tried
    std::vector<Word> nontrivial;
    for (const auto& w : cands)
        if (!w.is_identity()) nontrivial.push_back(w);

    auto quotient_of = [&](const std::vector<size_t>& tuple) {
        Presentation Q = P;
        for (size_t i : tuple) Q.add_relator(kind_relator(kind, x, nontrivial[i]));
        return Q;
    };

    for (int c = 1; c <= c_max; ++c) {
        // cap the tuple space before generating it: keep the shortest
        // base candidates so that base^c stays within the budget
        size_t base = nontrivial.size();
        auto tuple_count = [&](size_t b) {
            double total = 1;
            for (int i = 0; i < c; ++i) total *= static_cast<double>(b);
            return total;
        };
        while (base > 1 && tuple_count(base) > static_cast<double>(budget.max_candidates))
            --base;

        // c-tuples ordered by total length, then index-lexicographic
        // (candidate order is already length-then-lex)
        std::vector<std::vector<size_t>> tuples;
        std::vector<size_t> cur(static_cast<size_t>(c), 0);
        std::function<void(size_t)> gen = [&](size_t pos) {
            if (pos == static_cast<size_t>(c)) {
                tuples.push_back(cur);
                return;
            }
            for (size_t i = 0; i < base; ++i) {
                cur[pos] = i;
                gen(pos + 1);
            }
        };
        gen(0);
        std::stable_sort(tuples.begin(), tuples.end(),
                         [&](const std::vector<size_t>& a, const std::vector<size_t>& b) {
                             long long la = 0, lb = 0;
                             for (size_t i : a) la += nontrivial[i].length();
                             for (size_t i : b) lb += nontrivial[i].length();
                             if (la != lb) return la < lb;
                             return a < b;
                         });

        std::vector<long long> stages;
        for (long long cap : {2'000LL, 20'000LL, budget.max_cosets})
            if (cap <= budget.max_cosets && (stages.empty() || cap > stages.back()))
                stages.push_back(cap);
        for (long long cap : stages) {
            auto pred = [&](size_t ti) {
                Presentation Q = quotient_of(tuples[ti]);
                AbelianInvariants ab =
                    abelian_invariants(to_big(Q.exponent_matrix()), Q.gen_count());
                if (!ab.is_infinite_cyclic()) return false;
                CosetTable t = todd_coxeter(Q, {Word::generator(Q.distinguished_meridian())},
                                            budget.scaled_cosets(cap));
                return t.completed() && t.index == 1;
            };
            auto hit = detail::first_success(tuples.size(), workers, pred);
            if (!hit) continue;
            Presentation Q = quotient_of(tuples[*hit]);
            auto base = certify_infinite_cyclic(Q, budget.scaled_cosets(cap));
            if (!base) continue;  // unreachable: pred already certified
            Certificate cert;
            cert.kind = Certificate::Kind::BoundWitness;
            cert.presentation_hash = P.hash_hex();
            Json ws = Json::array();
            for (size_t i : tuples[*hit]) ws.push_back(nontrivial[i].str());
            cert.payload = Json{{"bound_kind", upper_kind_name(kind)}, {"c", c}, {"witnesses", ws}};
            cert.replay_data = Json{{"presentation", presentation_to_json(P)},
                                    {"witnesses", ws},
                                    {"quotient", base->replay_data}};
            return cert;
        }
    }
    return std::nullopt;
}

// Nonabelian-quotient certificate: a homomorphism onto a finite group
// killing the presentation's relators and every extra relator, with a
// witness pair of generators whose images do not commute. Searches the
// fixed finite-target ladder with uniform meridian-order constraints.
inline std::optional<Certificate> certify_nonabelian_quotient(const Presentation& P,
                                                              const std::vector<Word>& extras,
                                                              const Budget& budget) {
    static const std::vector<FiniteGroupSpec> ladder = {
        FiniteGroupSpec::symmetric(3),  FiniteGroupSpec::symmetric(4),
        FiniteGroupSpec::symmetric(5),  FiniteGroupSpec::psl2(5),
        FiniteGroupSpec::psl2(7),       FiniteGroupSpec::symmetric(6),
        FiniteGroupSpec::symmetric(7),  FiniteGroupSpec::symmetric(8),
        FiniteGroupSpec::psl2(11),      FiniteGroupSpec::psl2(13),
    };
    // the time limit bounds the whole ladder, not each rung
    auto start = std::chrono::steady_clock::now();
    for (const auto& target : ladder) {
        for (long long order : {2, 3, 4, 5, 6, 7}) {
            double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start).count();
            double remaining = budget.time_limit_seconds - elapsed;
            if (remaining <= 0) return std::nullopt;
            Budget slice = budget;
            slice.time_limit_seconds = remaining;
            std::vector<OrderConstraint> cons;
            for (GenId g = 0; g < P.gen_count(); ++g)
                if (P.is_meridian(g)) cons.push_back({g, order});
            auto homs = hom_search(P, target, cons, slice, 64, extras);
            for (const auto& h : homs) {
                // find a non-commuting pair of generator images
                for (GenId i = 0; i < P.gen_count(); ++i)
                    for (GenId j = i + 1; j < P.gen_count(); ++j) {
                        const Perm& a = h.images[static_cast<size_t>(i)];
                        const Perm& b = h.images[static_cast<size_t>(j)];
                        if (perm_compose(a, b) == perm_compose(b, a)) continue;
                        Certificate cert;
                        cert.kind = Certificate::Kind::NonAbelianQuotient;
                        cert.presentation_hash = P.hash_hex();
                        Json imgs = Json::array();
                        for (const auto& p : h.images) imgs.push_back(perm_str(p));
                        Json ex = Json::array();
                        for (const auto& w : extras) ex.push_back(w.str());
                        cert.payload = Json{{"target", h.target_name},
                                            {"witness_pair", Json::array({i, j})}};
                        cert.replay_data = Json{{"presentation", presentation_to_json(P)},
                                                {"extra_relators", ex},
                                                {"images", imgs},
                                                {"witness_pair", Json::array({i, j})}};
                        return cert;
                    }
            }
        }
    }
    return std::nullopt;
}

// Bounded Freiheitssatz instance: certifies that the one-relator
// quotient < a1, a2 | a1^p1, a2^p2, g^2 > is nontrivial, where g is a
// reduced alternating word in the two cyclic factors (generator 0 = a1,
// generator 1 = a2). When one factor's exponent sum vanishes mod its
// prime, the projection onto that cyclic factor already works;
// otherwise a finite quotient is found on the ladder.
inline std::optional<Certificate> verify_freiheitssatz_instance(long long p1, long long p2,
                                                                const Word& g,
                                                                const Budget& budget) {
    detail::require_odd_prime_ll(p1);
    detail::require_odd_prime_ll(p2);
    if (g.max_generator() > 1)
        throw std::invalid_argument("g must be a word in the two factor generators");
    Word a1 = Word::generator(0), a2 = Word::generator(1);
    Presentation Q(2, {a1.pow(p1), a2.pow(p2), g.pow(2)}, {true, true}, 0);

    auto ev = g.exponent_vector(2);
    Certificate cert;
    cert.kind = Certificate::Kind::NonTrivialQuotient;
    cert.presentation_hash = Q.hash_hex();
    Json base = Json{{"p1", p1}, {"p2", p2}, {"g", g.str()},
                     {"presentation", presentation_to_json(Q)}};
    if (ev[0] % p1 == 0) {
        // a1 |-> 1 in Z_p1, a2 |-> 0 kills all three relators
        cert.payload = Json{{"mode", "cyclic"}, {"factor", 1}, {"modulus", p1}};
        cert.replay_data = base;
        cert.replay_data["mode"] = "cyclic";
        cert.replay_data["factor"] = 1;
        cert.replay_data["modulus"] = p1;
        return cert;
    }
    if (ev[1] % p2 == 0) {
        cert.payload = Json{{"mode", "cyclic"}, {"factor", 2}, {"modulus", p2}};
        cert.replay_data = base;
        cert.replay_data["mode"] = "cyclic";
        cert.replay_data["factor"] = 2;
        cert.replay_data["modulus"] = p2;
        return cert;
    }

    static const std::vector<FiniteGroupSpec> ladder = {
        FiniteGroupSpec::symmetric(3),  FiniteGroupSpec::symmetric(4),
        FiniteGroupSpec::symmetric(5),  FiniteGroupSpec::psl2(5),
        FiniteGroupSpec::psl2(7),       FiniteGroupSpec::symmetric(6),
        FiniteGroupSpec::symmetric(7),  FiniteGroupSpec::symmetric(8),
        FiniteGroupSpec::psl2(11),      FiniteGroupSpec::psl2(13),
    };
    auto start = std::chrono::steady_clock::now();
    for (const auto& target : ladder) {
        double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start).count();
        double remaining = budget.time_limit_seconds - elapsed;
        if (remaining <= 0) return std::nullopt;
        Budget slice = budget;
        slice.time_limit_seconds = remaining;
        std::vector<OrderConstraint> cons = {{0, p1}, {1, p2}};
        auto homs = hom_search(Q, target, cons, slice, 1);
        if (homs.empty()) continue;
        const auto& h = homs[0];
        bool nontrivial = false;
        for (const auto& img : h.images) nontrivial = nontrivial || !perm_is_identity(img);
        if (!nontrivial) continue;
        Json imgs = Json::array();
        for (const auto& p : h.images) imgs.push_back(perm_str(p));
        cert.payload = Json{{"mode", "hom"}, {"target", h.target_name}};
        cert.replay_data = base;
        cert.replay_data["mode"] = "hom";
        cert.replay_data["images"] = imgs;
        return cert;
    }
    return std::nullopt;
}

namespace detail {

// Rotation amount of the image of a word under the projection
// G -> D_p collapsing the other free factor: z |-> reflection,
// a_keep |-> rotation, a_other |-> identity.
inline std::pair<int, long long> project_to_dihedral(const Word& w, int keep_factor, long long p) {
    // generator 0 = z, 1 = a1, 2 = a2 in the dihedral product presentation
    int eps = 0;
    long long rot = 0;
    for (auto [g, s] : w.letters()) {
        if (g == 0) {
            // reflection z: (eps, rot) * z = (eps+1, -rot)
            eps ^= 1;
            rot = (p - rot) % p;
        } else if (g == keep_factor) {
            rot = ((rot + s) % p + p) % p;
        }
    }
    return {eps, rot};
}

// z w z^-1 inside the dihedral product negates every a_i exponent, so
// z v^-1 z is v with its syllables in reverse order: [z, v] = rev(v) v.
inline Word reverse_word(const Word& w) {
    std::vector<Syllable> out(w.syllables().rbegin(), w.syllables().rend());
    return Word::reduce(out);
}

// Cells of the two-summand sweep: candidate conjugators over G's
// generators (z is the distinguished meridian), reduced to an effective
// conjugator in the free-product subgroup. For v = u z^eps in normal
// form, z^v = z^{iota^eps(u)} where iota negates every letter exponent,
// so each cell is labelled by that free-product element alone; cells
// are deduplicated by exact normal form.
inline std::vector<Word> afw_sweep_cells(long long p1, long long p2, int max_length) {
    std::vector<DihedralProductElement> assign = {
        nf_make(p1, p2, {}, true),                // z
        nf_make(p1, p2, {{1, 1}}, false),         // a1
        nf_make(p1, p2, {{2, 1}}, false),         // a2
    };
    std::vector<Word> cells;
    std::set<std::string> seen;
    enumerate_candidate_conjugators(3, 0, max_length, [&](const Word& w) {
        DihedralProductElement e = evaluate_in_G(p1, p2, w, assign);
        DihedralProductElement u;
        u.word = e.word;
        if (e.z_flag)
            for (auto& l : u.word) l.exponent = (l.factor == 1 ? p1 : p2) - l.exponent;
        if (!seen.insert(u.str()).second) return;
        std::vector<Syllable> syl;
        syl.reserve(u.word.size());
        for (const auto& l : u.word) syl.push_back({l.factor, l.exponent});
        cells.push_back(Word::reduce(syl));
    });
    return cells;
}

}  // namespace detail

// Two-summand lower bound a_fw >= 2 (bounded verification): finds
// dihedral surjections of both summands, assembles the surjection onto
// G = (Z_p1 * Z_p2) x| Z_2, and for every candidate conjugator image v
// (a word in the free-product subgroup, up to the budgeted length)
// certifies the quotient of G by [z, z^v] nonabelian. Each cell is
// witnessed either by a dihedral projection of G or by reduction to a
// bounded Freiheitssatz instance settled on the finite-quotient ladder.
inline std::optional<Certificate> lower_bound_afw_two(const Presentation& P1,
                                                      const Presentation& P2, const Budget& budget,
                                                      int workers = 1) {
    // (i) primes dividing the determinants
    auto pick_prime = [](const Presentation& P) -> long long {
        BigInt d = determinant(P);
        for (long long p : {3, 5, 7, 11, 13})
            if (d % p == 0) return p;
        return 0;
    };
    long long p1 = pick_prime(P1), p2 = pick_prime(P2);
    if (p1 == 0 || p2 == 0) return std::nullopt;
    // (ii) dihedral surjections of the summands
    auto col1 = dihedral_surjection(P1, p1);
    auto col2 = dihedral_surjection(P2, p2);
    if (!col1 || !col2) return std::nullopt;

    Presentation G = dihedral_product_group(p1, p2);

    // (iv) sweep all conjugator images in the free-product subgroup up
    // to the length budget, deduplicated by exact normal form
    std::vector<Word> cells = detail::afw_sweep_cells(p1, p2, budget.max_word_length);

    Word z = Word::generator(0);
    Json cell_records = Json::array();
    std::vector<Json> records(cells.size());
    std::vector<char> ok(cells.size(), 0);

    // dihedral projections of G: if the projected relator dies, the
    // projection itself is the nonabelian quotient
    for (size_t idx = 0; idx < cells.size(); ++idx) {
        Word h = commutator(z, conjugate(z, cells[idx]));
        for (int keep = 1; keep <= 2; ++keep) {
            long long p = keep == 1 ? p1 : p2;
            auto [eps, rot] = detail::project_to_dihedral(h, keep, p);
            if (eps == 0 && rot == 0) {
                records[idx] = Json{{"v", cells[idx].str()}, {"mode", "dihedral"}, {"factor", keep}};
                ok[idx] = 1;
                break;
            }
        }
    }
    std::vector<size_t> pending;
    for (size_t i = 0; i < cells.size(); ++i)
        if (!ok[i]) pending.push_back(i);

    // Remaining cells reduce to bounded Freiheitssatz instances: with
    // g = [z, v] = rev(v) v, the normal closure of [z, z^v] = g^2 in G
    // meets the free-product subgroup in the normal closure of g^2
    // there, so the quotient of G is nonabelian as soon as
    // (Z_p1 * Z_p2) / <<g^2>> is nontrivial. The homs of that free
    // product onto a ladder target do not depend on the cell, so
    // enumerate them once per target and filter per induced relator.
    Word fa1 = Word::generator(0), fa2 = Word::generator(1);
    Presentation FP(2, {fa1.pow(p1), fa2.pow(p2)}, {true, true}, 0);
    static const std::vector<FiniteGroupSpec> ladder = {
        FiniteGroupSpec::symmetric(3),  FiniteGroupSpec::symmetric(4),
        FiniteGroupSpec::symmetric(5),  FiniteGroupSpec::psl2(5),
        FiniteGroupSpec::psl2(7),       FiniteGroupSpec::symmetric(6),
        FiniteGroupSpec::symmetric(7),  FiniteGroupSpec::symmetric(8),
        FiniteGroupSpec::psl2(11),      FiniteGroupSpec::psl2(13),
    };
    auto start = std::chrono::steady_clock::now();
    for (const auto& target : ladder) {
        if (pending.empty()) break;
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        double remaining = budget.time_limit_seconds - elapsed;
        if (remaining <= 0) break;
        Budget slice = budget;
        slice.time_limit_seconds = remaining;
        std::vector<OrderConstraint> cons = {{0, p1}, {1, p2}};
        auto homs = hom_search(FP, target, cons, slice, 200'000);
        if (homs.empty()) continue;
        auto solve_cell = [&](size_t idx) {
            Word g = detail::reverse_word(cells[idx]) * cells[idx];
            Word r = detail::shift_generators(g, -1).pow(2);
            for (const auto& hm : homs)
                if (hm.kills(r)) {
                    Json imgs = Json::array();
                    for (const auto& p : hm.images) imgs.push_back(perm_str(p));
                    records[idx] = Json{{"v", cells[idx].str()},
                                        {"mode", "freiheitssatz"},
                                        {"g", g.str()},
                                        {"target", hm.target_name},
                                        {"images", imgs}};
                    ok[idx] = 1;
                    return;
                }
        };
        if (workers <= 1) {
            for (size_t k = 0; k < pending.size(); ++k) solve_cell(pending[k]);
        } else {
            std::atomic<size_t> next{0};
            auto run = [&]() {
                for (;;) {
                    size_t k = next.fetch_add(1);
                    if (k >= pending.size()) return;
                    solve_cell(pending[k]);
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(run);
            for (auto& t : pool) t.join();
        }
        std::vector<size_t> still;
        for (size_t idx : pending)
            if (!ok[idx]) still.push_back(idx);
        pending.swap(still);
    }
    for (size_t i = 0; i < cells.size(); ++i) {
        if (!ok[i]) return std::nullopt;  // a single unresolved cell spoils the sweep
        cell_records.push_back(records[i]);
    }

    Certificate cert;
    cert.kind = Certificate::Kind::NonAbelianQuotient;
    cert.presentation_hash = connected_sum(P1, P2).hash_hex();
    cert.payload = Json{{"claim", "a_fw >= 2 (bounded sweep)"},
                        {"p1", p1},
                        {"p2", p2},
                        {"sweep_length", budget.max_word_length},
                        {"cells", cells.size()}};
    Json colors1 = col1->colors, colors2 = col2->colors;
    cert.replay_data = Json{{"p1", p1},
                            {"p2", p2},
                            {"sweep_length", budget.max_word_length},
                            {"summand1", presentation_to_json(P1)},
                            {"summand2", presentation_to_json(P2)},
                            {"coloring1", colors1},
                            {"coloring2", colors2},
                            {"cells", cell_records}};
    return cert;
}

// Non-additivity verification: per-summand witnesses found at c = 1 are
// combined into the single relator of combined_relator; adding that one
// relator to the connected sum must certify it infinite cyclic.
inline std::optional<Certificate> verify_nonadditivity(const std::vector<Presentation>& Ps,
                                                       const std::vector<long long>& js,
                                                       UpperKind kind, const Budget& budget,
                                                       int workers = 1) {
    if (Ps.empty()) throw std::invalid_argument("need at least one summand");
    if (js.size() != Ps.size()) throw std::invalid_argument("one twist count per summand");
    for (size_t i = 0; i < js.size(); ++i)
        for (size_t j = i + 1; j < js.size(); ++j) {
            long long a = js[i] < 0 ? -js[i] : js[i], b = js[j] < 0 ? -js[j] : js[j];
            while (b) {
                long long t = a % b;
                a = b;
                b = t;
            }
            if (a != 1) throw std::invalid_argument("twist counts must be pairwise coprime");
        }
    if (Ps.size() == 1) return search_upper_bound(Ps[0], kind, 1, budget, workers);

    // per-summand witnesses at c = 1
    std::vector<Word> shifted;
    Json wlist = Json::array();
    int offset = 0;
    for (const auto& P : Ps) {
        auto cert = search_upper_bound(P, kind, 1, budget, workers);
        if (!cert) return std::nullopt;
        auto ws = cert->payload.at("witnesses");
        if (ws.size() != 1) return std::nullopt;
        Word w = Word::parse(ws[0].get<std::string>());
        shifted.push_back(detail::shift_generators(w, offset));
        wlist.push_back(ws[0]);
        offset += P.gen_count();
    }

    Presentation sum = Ps[0];
    for (size_t i = 1; i < Ps.size(); ++i) sum = connected_sum(sum, Ps[i]);
    Word combined = combined_relator(shifted, kind, sum.distinguished_meridian());
    Presentation Q = sum;
    Q.add_relator(combined);
    auto base = certify_infinite_cyclic(Q, budget);
    if (!base) return std::nullopt;

    Certificate cert;
    cert.kind = Certificate::Kind::BoundWitness;
    cert.presentation_hash = sum.hash_hex();
    cert.payload = Json{{"bound_kind", upper_kind_name(kind)},
                        {"c", 1},
                        {"combined_relator", combined.str()},
                        {"summand_witnesses", wlist}};
    cert.replay_data = Json{{"presentation", presentation_to_json(sum)},
                            {"combined_relator", combined.str()},
                            {"quotient", base->replay_data}};
    return cert;
}

namespace detail {

// Replay of the two-summand sweep certificate: re-checks the dihedral
// colorings, regenerates the deterministic cell list, and verifies each
// cell's quotient witness. No search.
inline bool replay_afw_two(const Certificate& cert) {
    long long p1 = cert.replay_data.at("p1").get<long long>();
    long long p2 = cert.replay_data.at("p2").get<long long>();
    int sweep = cert.replay_data.at("sweep_length").get<int>();
    require_odd_prime_ll(p1);
    require_odd_prime_ll(p2);

    // colorings of the summands must kill every relator and be onto
    for (int which = 1; which <= 2; ++which) {
        Presentation P = presentation_from_json(
            cert.replay_data.at(which == 1 ? "summand1" : "summand2"));
        DihedralColoring col;
        col.prime = which == 1 ? p1 : p2;
        for (const auto& c :
             cert.replay_data.at(which == 1 ? "coloring1" : "coloring2"))
            col.colors.push_back(c.get<long long>());
        if (static_cast<int>(col.colors.size()) != P.gen_count()) return false;
        for (const auto& r : P.relators()) {
            auto [eps, rot] = dihedral_evaluate(r, col);
            if (eps != 0 || rot != 0) return false;
        }
        if (col.colors[static_cast<size_t>(P.distinguished_meridian())] != 0) return false;
        bool nonzero = false;
        for (long long c : col.colors) nonzero = nonzero || c % col.prime != 0;
        if (!nonzero) return false;
    }

    std::vector<Word> cells = afw_sweep_cells(p1, p2, sweep);
    const Json& records = cert.replay_data.at("cells");
    if (records.size() != cells.size()) return false;

    Word z = Word::generator(0);
    for (size_t i = 0; i < cells.size(); ++i) {
        const Json& rec = records[i];
        if (rec.at("v").get<std::string>() != cells[i].str()) return false;
        Word h = commutator(z, conjugate(z, cells[i]));
        std::string mode = rec.at("mode").get<std::string>();
        if (mode == "dihedral") {
            int keep = rec.at("factor").get<int>();
            long long p = keep == 1 ? p1 : p2;
            auto [eps, rot] = project_to_dihedral(h, keep, p);
            if (eps != 0 || rot != 0) return false;  // projection must kill h
            if (p < 3) return false;                 // D_p nonabelian needs p >= 3
        } else if (mode == "freiheitssatz") {
            // g = [z, v] rewritten inside the free-product subgroup; the
            // quotient of G by h = g^2 is nonabelian iff the one-relator
            // quotient (Z_p1 * Z_p2) / <<g^2>> is nontrivial, which the
            // recorded finite image witnesses.
            Word g = reverse_word(cells[i]) * cells[i];
            if (rec.at("g").get<std::string>() != g.str()) return false;
            FiniteHom fh;
            for (const auto& s : rec.at("images"))
                fh.images.push_back(perm_parse(s.get<std::string>()));
            if (fh.images.size() != 2) return false;
            Word fa1 = Word::generator(0), fa2 = Word::generator(1);
            if (!fh.kills(fa1.pow(p1)) || !fh.kills(fa2.pow(p2))) return false;
            if (!fh.kills(shift_generators(g, -1).pow(2))) return false;
            bool nontrivial = false;
            for (const auto& img : fh.images) nontrivial = nontrivial || !perm_is_identity(img);
            if (!nontrivial) return false;
        } else {
            return false;
        }
    }
    return true;
}

}  // namespace detail

// Re-verifies a certificate from its replay data alone; no search is
// performed. Returns false on any inconsistency.
inline bool replay_certificate(const Certificate& cert) {
    try {
        switch (cert.kind) {
            case Certificate::Kind::InfiniteCyclic: {
                Presentation P = presentation_from_json(cert.replay_data.at("presentation"));
                if (P.hash_hex() != cert.presentation_hash) return false;
                AbelianInvariants ab =
                    abelian_invariants(to_big(P.exponent_matrix()), P.gen_count());
                if (!ab.is_infinite_cyclic()) return false;
                CosetTable t = detail::coset_table_from_json(cert.replay_data.at("coset_table"));
                std::vector<Word> sub;
                for (const auto& s : cert.replay_data.at("subgroup"))
                    sub.push_back(Word::parse(s.get<std::string>()));
                return t.index == 1 && t.verify(P, sub);
            }
            case Certificate::Kind::BoundWitness: {
                Presentation P = presentation_from_json(cert.replay_data.at("presentation"));
                if (P.hash_hex() != cert.presentation_hash) return false;
                UpperKind kind =
                    upper_kind_from_name(cert.payload.at("bound_kind").get<std::string>());
                Presentation Q = P;
                if (cert.replay_data.contains("combined_relator")) {
                    Q.add_relator(
                        Word::parse(cert.replay_data.at("combined_relator").get<std::string>()));
                } else if (cert.replay_data.contains("extra_relators")) {
                    for (const auto& wj : cert.replay_data.at("extra_relators"))
                        Q.add_relator(Word::parse(wj.get<std::string>()));
                } else if (cert.replay_data.contains("witnesses")) {
                    for (const auto& wj : cert.replay_data.at("witnesses"))
                        Q.add_relator(kind_relator(kind, P.distinguished_meridian(),
                                                   Word::parse(wj.get<std::string>())));
                }
                if (cert.payload.at("c").get<int>() == 0 &&
                    !cert.replay_data.contains("quotient")) {
                    // c = 0: the base presentation itself is infinite cyclic
                    AbelianInvariants ab =
                        abelian_invariants(to_big(P.exponent_matrix()), P.gen_count());
                    if (!ab.is_infinite_cyclic()) return false;
                    CosetTable t =
                        detail::coset_table_from_json(cert.replay_data.at("coset_table"));
                    std::vector<Word> sub;
                    for (const auto& s : cert.replay_data.at("subgroup"))
                        sub.push_back(Word::parse(s.get<std::string>()));
                    return t.index == 1 && t.verify(P, sub);
                }
                const Json& q = cert.replay_data.at("quotient");
                Presentation Q2 = presentation_from_json(q.at("presentation"));
                if (!(Q2.canonical_string() == Q.canonical_string())) return false;
                AbelianInvariants ab =
                    abelian_invariants(to_big(Q.exponent_matrix()), Q.gen_count());
                if (!ab.is_infinite_cyclic()) return false;
                CosetTable t = detail::coset_table_from_json(q.at("coset_table"));
                std::vector<Word> sub;
                for (const auto& s : q.at("subgroup"))
                    sub.push_back(Word::parse(s.get<std::string>()));
                return t.index == 1 && t.verify(Q, sub);
            }
            case Certificate::Kind::NonAbelianQuotient: {
                if (cert.replay_data.contains("cells"))
                    return detail::replay_afw_two(cert);
                Presentation P = presentation_from_json(cert.replay_data.at("presentation"));
                if (P.hash_hex() != cert.presentation_hash) return false;
                FiniteHom h;
                for (const auto& s : cert.replay_data.at("images"))
                    h.images.push_back(perm_parse(s.get<std::string>()));
                for (const auto& r : P.relators())
                    if (!h.kills(r)) return false;
                for (const auto& s : cert.replay_data.at("extra_relators"))
                    if (!h.kills(Word::parse(s.get<std::string>()))) return false;
                int i = cert.replay_data.at("witness_pair")[0].get<int>();
                int j = cert.replay_data.at("witness_pair")[1].get<int>();
                const Perm& a = h.images.at(static_cast<size_t>(i));
                const Perm& b = h.images.at(static_cast<size_t>(j));
                return !(perm_compose(a, b) == perm_compose(b, a));
            }
            case Certificate::Kind::NonTrivialQuotient: {
                Presentation Q = presentation_from_json(cert.replay_data.at("presentation"));
                if (Q.hash_hex() != cert.presentation_hash) return false;
                std::string mode = cert.replay_data.at("mode").get<std::string>();
                if (mode == "cyclic") {
                    int factor = cert.replay_data.at("factor").get<int>();
                    long long p = cert.replay_data.at("modulus").get<long long>();
                    // map a_factor |-> 1, the other |-> 0 in Z_p; every
                    // relator's exponent sum at a_factor must vanish mod p
                    for (const auto& r : Q.relators()) {
                        auto ev = r.exponent_vector(Q.gen_count());
                        if (ev[static_cast<size_t>(factor - 1)] % p != 0) return false;
                    }
                    return p > 1;
                }
                FiniteHom h;
                for (const auto& s : cert.replay_data.at("images"))
                    h.images.push_back(perm_parse(s.get<std::string>()));
                for (const auto& r : Q.relators())
                    if (!h.kills(r)) return false;
                bool nontrivial = false;
                for (const auto& img : h.images) nontrivial = nontrivial || !perm_is_identity(img);
                return nontrivial;
            }
        }
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

}  // namespace knotcert
