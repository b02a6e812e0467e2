// knotcert CLI: knot-group presentations, certified invariant bounds,
// theorem verification sweeps, and certificate cache management.
//
// Exit codes: 0 = everything certified, 10 = at least one Inconclusive
// result, 1 = error.

#include <chrono>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "knotcert/knotcert.hpp"

namespace kc = knotcert;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 10;
constexpr int kExitError = 1;

struct CommonOpts {
    long long max_cosets = 1'000'000;
    int max_word_length = 6;
    double time_limit = 300.0;
    std::string catalog_file;
    std::string cache_dir_flag;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    bool json = false;

    kc::Budget budget() const {
        kc::Budget b;
        b.max_cosets = max_cosets;
        b.max_word_length = max_word_length;
        b.time_limit_seconds = time_limit;
        return b;
    }
    std::string cache_dir() const { return kc::cache_directory(cache_dir_flag); }
    int worker_count() const { return workers > 0 ? workers : 1; }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--max-cosets", o.max_cosets, "coset enumeration budget");
    cmd->add_option("--max-word-length", o.max_word_length, "candidate word length budget");
    cmd->add_option("--time-limit", o.time_limit, "per-certification time limit (seconds)");
    cmd->add_option("--catalog", o.catalog_file, "catalog JSON file overriding the built-in one");
    cmd->add_option("--cache-dir", o.cache_dir_flag,
                    "certificate cache directory (overrides KNOTCERT_CACHE_DIR)");
    cmd->add_option("--workers", o.workers, "parallel certification workers");
    cmd->add_flag("--json", o.json, "emit the machine-readable report document");
}

kc::Json presentation_stats(const kc::Presentation& P) {
    long long total = 0;
    for (const auto& r : P.relators()) total += r.length();
    return kc::Json{{"generators", P.gen_count()},
                    {"relators", P.relators().size()},
                    {"total_relator_length", total},
                    {"distinguished_meridian", P.distinguished_meridian()},
                    {"hash", P.hash_hex()}};
}

void print_presentation(const kc::Presentation& P) {
    std::cout << "generators:";
    for (kc::GenId g = 0; g < P.gen_count(); ++g) {
        std::cout << " x" << g;
        if (P.is_meridian(g)) std::cout << (g == P.distinguished_meridian() ? "**" : "*");
    }
    std::cout << "   (* meridian, ** distinguished)\n";
    std::cout << "relators:\n";
    for (const auto& r : P.relators()) std::cout << "  " << r.str() << "\n";
    if (P.relators().empty()) std::cout << "  (none)\n";
}

std::string fmt_bound(const kc::BoundEntry& e) {
    std::string lo = e.lower ? std::to_string(*e.lower) : "?";
    std::string hi = e.upper ? std::to_string(*e.upper) : "?";
    if (e.lower && e.upper && *e.lower == *e.upper) return "= " + lo;
    return "[" + lo + ", " + hi + "]";
}

int cmd_group(const std::string& spec, const CommonOpts& opts) {
    kc::Catalog cat = kc::load_catalog(opts.catalog_file);
    kc::BuiltKnot built = kc::build_knot_spec(spec, cat);
    if (opts.json) {
        kc::Json j = kc::presentation_to_json(built.presentation);
        j["spec"] = spec;
        j["stats"] = presentation_stats(built.presentation);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "spec: " << spec << "\n";
        print_presentation(built.presentation);
    }
    return kExitOk;
}

int cmd_invariants(const std::string& spec, const CommonOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    kc::Catalog cat = kc::load_catalog(opts.catalog_file);
    kc::BuiltKnot built = kc::build_knot_spec(spec, cat);
    kc::InvariantReport rep =
        kc::invariant_report(built.presentation, opts.budget(), built.summands,
                             opts.worker_count(), 2, opts.cache_dir());
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (opts.json) {
        kc::Json doc;
        doc["schema_version"] = 1;
        doc["tool_version"] = kc::kToolVersion;
        doc["spec"] = spec;
        doc["stats"] = presentation_stats(built.presentation);
        doc["report"] = rep.to_json();
        doc["budget"] = kc::Json{{"max_cosets", opts.max_cosets},
                                 {"max_word_length", opts.max_word_length},
                                 {"time_limit", opts.time_limit}};
        doc["wall_time_seconds"] = wall;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "spec: " << spec << "\n";
        std::cout << "determinant: " << rep.determinant << "\n";
        std::cout << "coloring primes:";
        for (long long p : rep.coloring_primes) std::cout << " " << p;
        std::cout << "\n";
        std::cout << "m (Nakanishi index)        " << fmt_bound(rep.m) << "\n";
        std::cout << "a (Ma-Qiu index)           " << fmt_bound(rep.a) << "\n";
        std::cout << "a_st (alg. stabilization)  " << fmt_bound(rep.a_st) << "\n";
        std::cout << "a_fw (alg. Casson-Whitney) " << fmt_bound(rep.a_fw) << "\n";
        if (rep.mu_upper) std::cout << "mu upper bound             " << *rep.mu_upper << "\n";
        std::cout << "wall time: " << wall << " s\n";
    }
    return rep.any_inconclusive ? kExitInconclusive : kExitOk;
}

// Every reduced alternating word in the two cyclic factors, by
// syllable count; generator 0 is a1, generator 1 is a2.
std::vector<kc::Word> alternating_words(long long p1, long long p2, int max_syllables) {
    std::vector<kc::Word> out;
    std::function<void(kc::Word, int, int)> rec = [&](kc::Word cur, int last_factor, int left) {
        if (left == 0) return;
        for (int factor = 1; factor <= 2; ++factor) {
            if (factor == last_factor) continue;
            long long p = factor == 1 ? p1 : p2;
            for (long long e = 1; e < p; ++e) {
                kc::Word next = cur * kc::Word::generator(factor - 1, e);
                out.push_back(next);
                rec(next, factor, left - 1);
            }
        }
    };
    rec(kc::Word::identity(), 0, max_syllables);
    return out;
}

int cmd_verify_algadd(long long p1, long long p2, const CommonOpts& opts) {
    auto words = alternating_words(p1, p2, opts.max_word_length);
    int inconclusive = 0;
    for (const auto& g : words) {
        auto cert = kc::verify_freiheitssatz_instance(p1, p2, g, opts.budget());
        if (!cert) {
            ++inconclusive;
            std::cout << "INCONCLUSIVE g=" << g.str() << "\n";
        }
    }
    std::cout << "freiheitssatz sweep p1=" << p1 << " p2=" << p2
              << " length<=" << opts.max_word_length << ": " << words.size() - inconclusive << "/"
              << words.size() << " certified\n";
    return inconclusive == 0 ? kExitOk : kExitInconclusive;
}

int cmd_verify_nonadd(const std::vector<std::string>& knots, const std::vector<long long>& js,
                      const CommonOpts& opts) {
    if (knots.size() != js.size()) throw std::invalid_argument("need one twist count per knot");
    kc::Catalog cat = kc::load_catalog(opts.catalog_file);
    std::vector<kc::Presentation> Ps;
    for (size_t i = 0; i < knots.size(); ++i) {
        auto it = cat.find(knots[i]);
        if (it == cat.end()) throw std::invalid_argument("unknown catalog name: " + knots[i]);
        Ps.push_back(kc::twist_spin(kc::presentation_from_entry(it->second), js[i]));
    }
    int rc = kExitOk;
    for (kc::UpperKind kind : {kc::UpperKind::ASt, kc::UpperKind::AFw}) {
        auto cert = kc::verify_nonadditivity(Ps, js, kind, opts.budget(), opts.worker_count());
        if (cert) {
            std::cout << kc::upper_kind_name(kind) << "(sum) <= 1 certified via "
                      << cert->payload.at("combined_relator").get<std::string>() << "\n";
        } else {
            std::cout << kc::upper_kind_name(kind) << ": INCONCLUSIVE\n";
            rc = kExitInconclusive;
        }
    }
    return rc;
}

int cmd_verify_fusion(int n, int seeds, const CommonOpts& opts) {
    int rc = kExitOk;
    for (int s = 0; s < seeds; ++s) {
        std::mt19937 rng(static_cast<unsigned>(1000 + s));
        std::vector<kc::Word> conj;
        for (int j = 0; j < n; ++j) {
            // random word of length <= 3 in the n+1 meridians
            std::uniform_int_distribution<int> len_d(0, 3), gen_d(0, n), sign_d(0, 1);
            kc::Word w;
            int len = len_d(rng);
            for (int k = 0; k < len; ++k)
                w = w * kc::Word::generator(gen_d(rng), sign_d(rng) ? 1 : -1);
            conj.push_back(w);
        }
        kc::Presentation P = kc::ribbon_presentation(n, conj);
        auto cert = kc::search_upper_bound(P, kc::UpperKind::ASt, n, opts.budget(),
                                           opts.worker_count());
        if (cert) {
            std::cout << "seed " << s << ": a_st <= " << cert->payload.at("c").get<int>()
                      << " (fusion count " << n << ")\n";
        } else {
            std::cout << "seed " << s << ": INCONCLUSIVE\n";
            rc = kExitInconclusive;
        }
    }
    return rc;
}

int cmd_verify_inequalities(const std::vector<std::string>& specs, const CommonOpts& opts) {
    kc::Catalog cat = kc::load_catalog(opts.catalog_file);
    std::vector<std::string> todo = specs;
    if (todo.empty())
        for (const auto& [name, entry] : cat) todo.push_back(name);
    int rc = kExitOk;
    for (const auto& spec : todo) {
        kc::BuiltKnot built = kc::build_knot_spec(spec, cat);
        kc::InvariantReport rep =
            kc::invariant_report(built.presentation, opts.budget(), built.summands,
                                 opts.worker_count(), 2, opts.cache_dir());
        // invariant_report validates the chain internally and throws on
        // any certified-bound crossing
        std::cout << spec << ": chain consistent; m " << fmt_bound(rep.m) << ", a "
                  << fmt_bound(rep.a) << ", a_st " << fmt_bound(rep.a_st) << ", a_fw "
                  << fmt_bound(rep.a_fw) << "\n";
        if (rep.any_inconclusive) rc = kExitInconclusive;
    }
    return rc;
}

int cmd_cache(const std::string& action, double max_age, const CommonOpts& opts) {
    std::string dir = opts.cache_dir();
    if (action == "list") {
        for (const auto& e : kc::cache_list(dir))
            std::cout << e.file << "  " << e.kind << "  " << e.presentation_hash << "\n";
        return kExitOk;
    }
    if (action == "gc") {
        int removed = kc::cache_gc(dir, max_age);
        std::cout << "removed " << removed << " certificate(s)\n";
        return kExitOk;
    }
    if (action == "verify") {
        kc::CacheVerifyResult r = kc::cache_verify(dir);
        std::cout << r.checked << " checked, " << r.failures.size() << " failed\n";
        for (const auto& f : r.failures) std::cout << "FAILED " << f << "\n";
        return r.failures.empty() ? kExitOk : kExitError;
    }
    throw std::invalid_argument("unknown cache action: " + action);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knot group presentations and certified unknotting-invariant bounds"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::string group_spec;
    CLI::App* group = app.add_subcommand("group", "print the presentation of a knot spec");
    group->add_option("spec", group_spec, "knot spec expression")->required();
    add_common(group, opts);

    std::string inv_spec;
    CLI::App* invariants =
        app.add_subcommand("invariants", "certified invariant bounds for a knot spec");
    invariants->add_option("spec", inv_spec, "knot spec expression")->required();
    add_common(invariants, opts);

    CLI::App* verify = app.add_subcommand("verify", "run a theorem-verification pipeline");
    verify->require_subcommand(1);
    long long p1 = 3, p2 = 5;
    CLI::App* algadd = verify->add_subcommand("algadd", "bounded Freiheitssatz sweep");
    algadd->add_option("--p1", p1, "first odd prime");
    algadd->add_option("--p2", p2, "second odd prime");
    add_common(algadd, opts);

    std::vector<std::string> nonadd_knots = {"3_1", "3_1"};
    std::vector<long long> nonadd_js = {2, 3};
    CLI::App* nonadd = verify->add_subcommand("nonadd", "non-additivity certification");
    nonadd->add_option("--knots", nonadd_knots, "catalog names of the classical knots");
    nonadd->add_option("--js", nonadd_js, "pairwise coprime twist counts");
    add_common(nonadd, opts);

    int fusion_n = 2, fusion_seeds = 3;
    CLI::App* fusion = verify->add_subcommand("fusion", "a_st bounds on random ribbon knots");
    fusion->add_option("--n", fusion_n, "fusion count");
    fusion->add_option("--seeds", fusion_seeds, "number of random presentations");
    add_common(fusion, opts);

    std::vector<std::string> ineq_specs;
    CLI::App* inequalities =
        verify->add_subcommand("inequalities", "chain-consistency over specs (default: catalog)");
    inequalities->add_option("specs", ineq_specs, "knot spec expressions");
    add_common(inequalities, opts);

    CLI::App* cache = app.add_subcommand("cache", "certificate cache management");
    std::string cache_action;
    double cache_max_age = 0.0;
    cache->add_option("action", cache_action, "list | gc | verify")->required();
    cache->add_option("--max-age", cache_max_age, "gc: maximum age in seconds");
    add_common(cache, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (group->parsed()) return cmd_group(group_spec, opts);
        if (invariants->parsed()) return cmd_invariants(inv_spec, opts);
        if (verify->parsed()) {
            if (algadd->parsed()) return cmd_verify_algadd(p1, p2, opts);
            if (nonadd->parsed()) return cmd_verify_nonadd(nonadd_knots, nonadd_js, opts);
            if (fusion->parsed()) return cmd_verify_fusion(fusion_n, fusion_seeds, opts);
            if (inequalities->parsed()) return cmd_verify_inequalities(ineq_specs, opts);
        }
        if (cache->parsed()) return cmd_cache(cache_action, cache_max_age, opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    std::cerr << "error: no subcommand\n";
    return kExitError;
}
