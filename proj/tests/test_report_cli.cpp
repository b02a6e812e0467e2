#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "knotcert/knotcert.hpp"

using namespace knotcert;

namespace {

Presentation catalog_knot(const std::string& name) {
    return presentation_from_entry(default_catalog().at(name));
}

Budget quick_budget() {
    Budget b;
    b.max_cosets = 50'000;
    b.max_word_length = 4;
    b.time_limit_seconds = 60.0;
    return b;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("knotcert-test-" + std::to_string(std::rand()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("catalog defaults") {
    Catalog cat = default_catalog();
    CHECK(cat.count("unknot") == 1);
    CHECK(cat.count("3_1") == 1);
    CHECK(cat.count("t2_13") == 1);
    CHECK(determinant(presentation_from_entry(cat.at("t2_9"))) == 9);
    CHECK_THROWS(load_catalog("/nonexistent/catalog.json"));
}

TEST_CASE("construction expression grammar") {
    Catalog cat = default_catalog();

    BuiltKnot plain = build_knot_spec("3_1", cat);
    CHECK(plain.presentation.hash_hex() == catalog_knot("3_1").hash_hex());
    CHECK(plain.summands.empty());

    BuiltKnot sum = build_knot_spec("sum(3_1, 4_1)", cat);
    CHECK(sum.summands.size() == 2);
    CHECK(sum.presentation.hash_hex() ==
          connected_sum(catalog_knot("3_1"), catalog_knot("4_1")).hash_hex());

    BuiltKnot ts = build_knot_spec("tspin(3_1, 2)", cat);
    CHECK(ts.presentation.hash_hex() == twist_spin(catalog_knot("3_1"), 2).hash_hex());

    BuiltKnot sp = build_knot_spec("spin(3_1)", cat);
    CHECK(sp.presentation.hash_hex() == catalog_knot("3_1").hash_hex());

    BuiltKnot rb = build_knot_spec("ribbon(1; x1)", cat);
    CHECK(rb.presentation.hash_hex() ==
          ribbon_presentation(1, {Word::generator(1)}).hash_hex());

    BuiltKnot tb = build_knot_spec("twobridge(2, -2)", cat);
    CHECK(tb.presentation.hash_hex() == two_bridge({2, -2}).hash_hex());

    // nested construction: inner sums do not leak summands outward
    BuiltKnot nested = build_knot_spec("tspin(sum(3_1, 3_1), 2)", cat);
    CHECK(nested.summands.empty());

    CHECK_THROWS(build_knot_spec("9_99", cat));
    CHECK_THROWS(build_knot_spec("frob(3_1)", cat));
    CHECK_THROWS(build_knot_spec("3_1 extra", cat));
    CHECK_THROWS(build_knot_spec("sum(3_1", cat));
}

TEST_CASE("tietze generator elimination") {
    CHECK(tietze_generator_upper(unknot_presentation()) == 1);
    // trefoil: both generators occur three times in the relator
    CHECK(tietze_generator_upper(catalog_knot("3_1")) == 2);
    // ribbon relators always carry the next meridian exactly once
    CHECK(tietze_generator_upper(ribbon_presentation(1, {Word::generator(1)})) == 1);
    CHECK(tietze_generator_upper(
              ribbon_presentation(2, {Word::generator(1), Word::generator(0)})) == 1);
    // Wirtinger presentations from braids collapse to two generators
    CHECK(tietze_generator_upper(catalog_knot("4_1")) <= 2);
    CHECK(tietze_generator_upper(catalog_knot("6_1")) <= 2);
}

TEST_CASE("invariant report: unknotted cases") {
    InvariantReport rep = invariant_report(unknot_presentation(), quick_budget());
    CHECK(rep.m.lower == 0);
    CHECK(rep.m.upper == 0);
    CHECK(rep.a_fw.upper == 0);
    CHECK_FALSE(rep.any_inconclusive);
    CHECK(rep.determinant == "1");
    CHECK(rep.coloring_primes.empty());

    InvariantReport spun =
        invariant_report(twist_spin(catalog_knot("3_1"), 1), quick_budget());
    CHECK(spun.a_fw.upper == 0);
    CHECK_FALSE(spun.any_inconclusive);
}

TEST_CASE("invariant report: 2-twist spun trefoil is exactly 1 everywhere") {
    InvariantReport rep =
        invariant_report(twist_spin(catalog_knot("3_1"), 2), quick_budget());
    CHECK(rep.determinant == "3");
    CHECK(rep.coloring_primes == std::vector<long long>{3});
    for (const BoundEntry* e : {&rep.m, &rep.a, &rep.a_st, &rep.a_fw}) {
        REQUIRE(e->lower.has_value());
        REQUIRE(e->upper.has_value());
        CHECK(*e->lower == 1);
        CHECK(*e->upper == 1);
    }
    CHECK(rep.mu_upper == 2);
    CHECK_FALSE(rep.any_inconclusive);
    // every certificate attached to the report replays
    for (const BoundEntry* e : {&rep.m, &rep.a, &rep.a_st, &rep.a_fw})
        for (const auto& c : e->certificates) CHECK(replay_certificate(c));
}

TEST_CASE("invariant report is deterministic across worker counts") {
    Presentation P = twist_spin(catalog_knot("3_1"), 2);
    InvariantReport serial = invariant_report(P, quick_budget(), {}, 1);
    InvariantReport parallel = invariant_report(P, quick_budget(), {}, 4);
    CHECK(serial.to_json().dump(2) == parallel.to_json().dump(2));
}

TEST_CASE("report JSON shape") {
    InvariantReport rep = invariant_report(unknot_presentation(), quick_budget());
    Json j = rep.to_json();
    CHECK(j.contains("presentation_hash"));
    CHECK(j.at("determinant") == "1");
    CHECK(j.at("m").contains("lower"));
    CHECK(j.at("m").contains("certificates"));
    CHECK(j.at("any_inconclusive") == false);
}

TEST_CASE("certificate cache: store, load, list, verify, gc") {
    TempDir dir;
    Budget b = quick_budget();
    auto cert = certify_infinite_cyclic(unknot_presentation(), b);
    REQUIRE(cert.has_value());
    std::string key = cache_key("infinite_cyclic", cert->presentation_hash, b);

    CHECK_FALSE(cache_load(dir.str(), key).has_value());
    cache_store(dir.str(), key, *cert);
    auto loaded = cache_load(dir.str(), key);
    REQUIRE(loaded.has_value());
    CHECK(loaded->presentation_hash == cert->presentation_hash);

    auto listing = cache_list(dir.str());
    REQUIRE(listing.size() == 1);
    CHECK(listing[0].kind == "infinite_cyclic");
    CHECK(listing[0].presentation_hash == cert->presentation_hash);

    CacheVerifyResult vr = cache_verify(dir.str());
    CHECK(vr.checked == 1);
    CHECK(vr.failures.empty());

    // tampered entries fail verification and are not loaded
    {
        std::ofstream out(cache_path(dir.str(), key));
        Certificate bad = *cert;
        bad.replay_data["coset_table"]["index"] = 7;
        out << bad.to_json().dump(2);
    }
    CHECK_FALSE(cache_load(dir.str(), key).has_value());
    CacheVerifyResult vr2 = cache_verify(dir.str());
    CHECK(vr2.checked == 1);
    CHECK(vr2.failures.size() == 1);

    CHECK(cache_gc(dir.str(), 0.0) == 1);
    CHECK(cache_list(dir.str()).empty());

    // empty directory string disables caching entirely
    cache_store("", key, *cert);
    CHECK_FALSE(cache_load("", key).has_value());
}

TEST_CASE("with_certificate_cache avoids recomputation") {
    TempDir dir;
    Budget b = quick_budget();
    Presentation U = unknot_presentation();
    int calls = 0;
    auto compute = [&]() {
        ++calls;
        return certify_infinite_cyclic(U, b);
    };
    auto first = with_certificate_cache(dir.str(), "infinite_cyclic", U.hash_hex(), b, compute);
    REQUIRE(first.has_value());
    CHECK(calls == 1);
    auto second = with_certificate_cache(dir.str(), "infinite_cyclic", U.hash_hex(), b, compute);
    REQUIRE(second.has_value());
    CHECK(calls == 1);  // served from cache
    CHECK(second->to_json() == first->to_json());

    // a different budget class is a different key: recompute
    Budget other = b;
    other.max_cosets = b.max_cosets * 2;
    auto third =
        with_certificate_cache(dir.str(), "infinite_cyclic", U.hash_hex(), other, compute);
    REQUIRE(third.has_value());
    CHECK(calls == 2);
}

TEST_CASE("cached reports match fresh reports") {
    TempDir dir;
    Presentation P = twist_spin(catalog_knot("3_1"), 2);
    InvariantReport fresh = invariant_report(P, quick_budget(), {}, 1, 2, "");
    InvariantReport primed = invariant_report(P, quick_budget(), {}, 1, 2, dir.str());
    InvariantReport cached = invariant_report(P, quick_budget(), {}, 1, 2, dir.str());
    CHECK(fresh.to_json().dump(2) == primed.to_json().dump(2));
    CHECK(primed.to_json().dump(2) == cached.to_json().dump(2));
    CHECK(!cache_list(dir.str()).empty());
}
