#pragma once

// Invariant reports: certified lower and upper bounds for the Nakanishi
// index m, Ma-Qiu index a, algebraic stabilization number a_st, and
// algebraic Casson-Whitney number a_fw, with the meridian-generation
// bound mu - 1 closing the chain m <= a <= a_st <= a_fw <= mu - 1.

#include "knotcert/cache.hpp"
#include "knotcert/certify.hpp"

namespace knotcert {

// Runs compute() unless a replay-verified certificate for the same
// presentation, operation, and budget class is already cached; stores
// fresh positive results. An empty directory disables caching.
template <typename Fn>
inline std::optional<Certificate> with_certificate_cache(const std::string& dir,
                                                         const std::string& operation,
                                                         const std::string& presentation_hash,
                                                         const Budget& budget, Fn&& compute) {
    std::string key = cache_key(operation, presentation_hash, budget);
    if (auto cached = cache_load(dir, key))
        if (cached->presentation_hash == presentation_hash) return cached;
    std::optional<Certificate> cert = compute();
    if (cert) cache_store(dir, key, *cert);
    return cert;
}

struct BoundEntry {
    std::optional<int> lower;
    std::optional<int> upper;
    std::vector<std::string> notes;
    std::vector<Certificate> certificates;

    Json to_json() const {
        Json j;
        j["lower"] = lower ? Json(*lower) : Json(nullptr);
        j["upper"] = upper ? Json(*upper) : Json(nullptr);
        j["notes"] = notes;
        Json cs = Json::array();
        for (const auto& c : certificates) cs.push_back(c.to_json());
        j["certificates"] = cs;
        return j;
    }
};

struct InvariantReport {
    std::string presentation_hash;
    std::string determinant;
    std::vector<long long> coloring_primes;
    BoundEntry m, a, a_st, a_fw;
    std::optional<int> mu_upper;  // certified upper bound for mu itself
    bool any_inconclusive = false;

    // Hard error on certified-lower > certified-upper anywhere along the
    // chain; that state can only arise from an implementation bug.
    void validate_chain() const {
        const BoundEntry* chain[] = {&m, &a, &a_st, &a_fw};
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i; j < 4; ++j)
                if (chain[i]->lower && chain[j]->upper && *chain[i]->lower > *chain[j]->upper)
                    throw std::logic_error("invariant chain violated: certified bounds cross");
        if (a_fw.lower && mu_upper && *a_fw.lower > *mu_upper - 1)
            throw std::logic_error("invariant chain violated: a_fw lower exceeds mu upper - 1");
    }

    Json to_json() const {
        return Json{{"presentation_hash", presentation_hash},
                    {"determinant", determinant},
                    {"coloring_primes", coloring_primes},
                    {"m", m.to_json()},
                    {"a", a.to_json()},
                    {"a_st", a_st.to_json()},
                    {"a_fw", a_fw.to_json()},
                    {"mu_upper", mu_upper ? Json(*mu_upper) : Json(nullptr)},
                    {"any_inconclusive", any_inconclusive}};
    }
};

// Greedy Tietze generator elimination: a relator in which some
// non-distinguished generator occurs exactly once (exponent +-1) lets
// that generator be rewritten in the others. Each elimination keeps the
// all-meridian property (meridians are rewritten as words in meridians).
// Returns the surviving generator count, an upper bound for mu.
inline int tietze_generator_upper(const Presentation& P) {
    int n = P.gen_count();
    GenId dist = P.distinguished_meridian();
    std::vector<Word> rels = P.relators();

    for (;;) {
        bool eliminated = false;
        for (size_t ri = 0; ri < rels.size() && !eliminated; ++ri) {
            auto letters = rels[ri].letters();
            for (GenId g = 0; g < n && !eliminated; ++g) {
                if (g == dist) continue;
                int occurrences = 0;
                size_t pos = 0;
                for (size_t k = 0; k < letters.size(); ++k)
                    if (letters[k].first == g) {
                        ++occurrences;
                        pos = k;
                    }
                if (occurrences != 1) continue;
                // r = u g^s w = 1  =>  g = (u^-1 w^-1)^s
                Word u, w;
                for (size_t k = 0; k < pos; ++k)
                    u = u * Word::generator(letters[k].first, letters[k].second);
                for (size_t k = pos + 1; k < letters.size(); ++k)
                    w = w * Word::generator(letters[k].first, letters[k].second);
                Word expr = letters[pos].second > 0 ? u.inverse() * w.inverse() : w * u;

                Homomorphism sub = Homomorphism::identity(n);
                sub.images[static_cast<size_t>(g)] = expr;
                std::vector<Word> next;
                for (size_t k = 0; k < rels.size(); ++k) {
                    if (k == ri) continue;
                    Word img = sub.apply(rels[k]).cyclically_reduced();
                    if (!img.is_identity()) next.push_back(img);
                }
                // renumber to drop g
                std::vector<Word> renumbered;
                for (const auto& r : next) {
                    std::vector<Syllable> out;
                    for (const auto& s : r.syllables())
                        out.push_back({s.gen > g ? s.gen - 1 : s.gen, s.exp});
                    renumbered.push_back(Word::reduce(out));
                }
                rels = std::move(renumbered);
                if (dist > g) --dist;
                --n;
                eliminated = true;
            }
        }
        if (!eliminated) break;
    }
    return n;
}

// Full certified-bounds report. When the presentation was built as a
// connected sum, pass the summands to enable the two-summand a_fw lower
// bound and the additivity upper bound from per-summand witnesses.
inline InvariantReport invariant_report(const Presentation& P, const Budget& budget,
                                        const std::vector<Presentation>& summands = {},
                                        int workers = 1, int c_max = 2,
                                        const std::string& cache_dir = "") {
    InvariantReport rep;
    rep.presentation_hash = P.hash_hex();
    BigInt det = determinant(P);
    rep.determinant = det.str();
    for (long long p : {3, 5, 7, 11, 13})
        if (coloring_space(P, p).has_nontrivial()) rep.coloring_primes.push_back(p);

    // Nakanishi lower bound: best fiber dimension over small primes
    int m_lower = 0;
    for (long long p : {3, 5, 7, 11, 13})
        m_lower = std::max(m_lower, nakanishi_lower_bound(P, p));
    rep.m.lower = m_lower;
    if (m_lower > 0) rep.m.notes.push_back("fiber rank at (t+1, p)");

    auto ic = with_certificate_cache(cache_dir, "infinite_cyclic", P.hash_hex(), budget,
                                     [&] { return certify_infinite_cyclic(P, budget); });
    if (ic) {
        rep.m = BoundEntry{0, 0, {"group is infinite cyclic"}, {*ic}};
        rep.a = rep.a_st = rep.a_fw = rep.m;
        rep.mu_upper = tietze_generator_upper(P);
        rep.validate_chain();
        return rep;
    }

    // a(K) >= 1 when a nonabelian quotient exists
    auto nonab = with_certificate_cache(cache_dir, "nonabelian", P.hash_hex(), budget,
                                        [&] { return certify_nonabelian_quotient(P, {}, budget); });
    if (nonab) {
        rep.a.lower = std::max(1, m_lower);
        rep.a.certificates.push_back(*nonab);
        rep.a.notes.push_back("nonabelian quotient onto " +
                              nonab->payload.at("target").get<std::string>());
    }

    // two-summand lower bound for a_fw
    if (summands.size() == 2) {
        auto two = with_certificate_cache(
            cache_dir, "afw_two", P.hash_hex(), budget,
            [&] { return lower_bound_afw_two(summands[0], summands[1], budget, workers); });
        if (two) {
            rep.a_fw.lower = 2;
            rep.a_fw.certificates.push_back(*two);
            rep.a_fw.notes.push_back("two-summand dihedral obstruction (bounded sweep)");
        }
    }

    // mu - 1 already caps every entry in the chain, so witness searches
    // never need to go deeper than that
    rep.mu_upper = tietze_generator_upper(P);
    int c_search = std::min(c_max, std::max(0, *rep.mu_upper - 1));

    // additivity upper bound for sums: one witness per summand
    if (summands.size() >= 2) {
        for (UpperKind kind : {UpperKind::ASt, UpperKind::AFw}) {
            std::vector<Word> relators;
            std::vector<Certificate> parts;
            int offset = 0;
            bool ok = true;
            for (const auto& S : summands) {
                auto cert = search_upper_bound(S, kind, 1, budget, workers);
                if (!cert) {
                    ok = false;
                    break;
                }
                int c = cert->payload.at("c").get<int>();
                GenId x = S.distinguished_meridian();
                for (const auto& wj : cert->payload.at("witnesses")) {
                    Word w = Word::parse(wj.get<std::string>());
                    relators.push_back(detail::shift_generators(kind_relator(kind, x, w), offset));
                }
                (void)c;
                parts.push_back(*cert);
                offset += S.gen_count();
            }
            if (!ok) continue;
            Presentation Q = P;
            for (const auto& r : relators) Q.add_relator(r);
            auto base = certify_infinite_cyclic(Q, budget);
            if (!base) continue;
            int total = static_cast<int>(relators.size());
            BoundEntry* entry = kind == UpperKind::ASt ? &rep.a_st : &rep.a_fw;
            if (!entry->upper || total < *entry->upper) {
                entry->upper = total;
                entry->notes.push_back("additivity: per-summand witnesses combined");
                Certificate cert;
                cert.kind = Certificate::Kind::BoundWitness;
                cert.presentation_hash = P.hash_hex();
                Json ws = Json::array();
                for (const auto& r : relators) ws.push_back(r.str());
                cert.payload = Json{{"bound_kind", upper_kind_name(kind)},
                                    {"c", total},
                                    {"relators", ws}};
                cert.replay_data = Json{{"presentation", presentation_to_json(P)},
                                        {"extra_relators", ws},
                                        {"quotient", base->replay_data},
                                        {"mode", "explicit_relators"}};
                entry->certificates.push_back(cert);
                for (const auto& p : parts) entry->certificates.push_back(p);
            }
        }
    }

    // direct upper bounds by witness search; a search at or above an
    // already-certified upper cannot improve the report, so cap there
    struct KindSlot {
        UpperKind kind;
        BoundEntry* entry;
    } slots[] = {{UpperKind::MaQiu, &rep.a}, {UpperKind::ASt, &rep.a_st},
                 {UpperKind::AFw, &rep.a_fw}};
    for (auto& slot : slots) {
        int c_kind = c_search;
        if (slot.entry->upper) c_kind = std::min(c_kind, *slot.entry->upper - 1);
        if (c_kind < 0) continue;
        auto cert = with_certificate_cache(
            cache_dir,
            std::string("upper-") + upper_kind_name(slot.kind) + "-c" + std::to_string(c_kind),
            P.hash_hex(), budget,
            [&] { return search_upper_bound(P, slot.kind, c_kind, budget, workers); });
        if (cert) {
            int c = cert->payload.at("c").get<int>();
            if (!slot.entry->upper || c < *slot.entry->upper) slot.entry->upper = c;
            slot.entry->certificates.push_back(*cert);
        }
    }

    // propagate along the chain: lowers forward (max), uppers backward
    // (min); a_fw <= mu - 1 closes the right end
    if (rep.mu_upper) {
        int cap = *rep.mu_upper - 1;
        if (!rep.a_fw.upper || cap < *rep.a_fw.upper) {
            rep.a_fw.upper = cap;
            rep.a_fw.notes.push_back("capped by meridian-generation bound mu - 1");
        }
    }
    auto fwd = [](BoundEntry& from, BoundEntry& to) {
        if (from.lower && (!to.lower || *from.lower > *to.lower)) to.lower = *from.lower;
    };
    auto bwd = [](BoundEntry& from, BoundEntry& to) {
        if (from.upper && (!to.upper || *from.upper < *to.upper)) to.upper = *from.upper;
    };
    fwd(rep.m, rep.a);
    fwd(rep.a, rep.a_st);
    fwd(rep.a_st, rep.a_fw);
    bwd(rep.a_fw, rep.a_st);
    bwd(rep.a_st, rep.a);
    bwd(rep.a, rep.m);

    rep.any_inconclusive = !(rep.m.upper && rep.a.upper && rep.a_st.upper && rep.a_fw.upper &&
                             rep.m.lower && rep.a.lower && rep.a_st.lower && rep.a_fw.lower &&
                             *rep.m.lower == *rep.m.upper && *rep.a.lower == *rep.a.upper &&
                             *rep.a_st.lower == *rep.a_st.upper &&
                             *rep.a_fw.lower == *rep.a_fw.upper);
    rep.validate_chain();
    return rep;
}

}  // namespace knotcert
