#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "knotcert/presentation.hpp"
#include "knotcert/snf.hpp"
#include "oracles.hpp"

using namespace knotcert;

TEST_CASE("presentation invariants and relator dedup") {
    Word a = Word::generator(0), b = Word::generator(1);
    Word trefoil_rel = a * b * a * b.inverse() * a.inverse() * b.inverse();
    Presentation P = Presentation::all_meridian(2, {trefoil_rel});
    CHECK(P.gen_count() == 2);
    REQUIRE(P.relators().size() == 1);
    P.check_valid();

    // cyclic rotations and inverses of an existing relator are dropped
    Presentation Q = Presentation::all_meridian(
        2, {trefoil_rel, trefoil_rel.inverse(),
            b * a * b.inverse() * a.inverse() * b.inverse() * a,  // a rotation
            Word::identity(), b.inverse() * trefoil_rel * b});
    CHECK(Q.relators().size() == 1);

    CHECK_THROWS(Presentation(2, {Word::generator(5)}, {true, true}, 0));
    CHECK_THROWS(Presentation(2, {}, {true, false}, 1));  // non-meridian distinguished
    CHECK_THROWS(Presentation(2, {}, {false, false}, 0));
}

TEST_CASE("canonical serialization and hash") {
    Word a = Word::generator(0), b = Word::generator(1);
    Presentation P = Presentation::all_meridian(2, {a * b.inverse(), a.pow(3)});
    Presentation Q = Presentation::all_meridian(2, {a.pow(3), a * b.inverse()});
    CHECK(P.canonical_string() == Q.canonical_string());
    CHECK(P.hash_hex() == Q.hash_hex());
    CHECK(P.hash_hex().size() == 16);
}

TEST_CASE("smith normal form examples") {
    CHECK(smith_normal_form(to_big({{1, 0}, {0, 1}})) == std::vector<BigInt>{1, 1});
    CHECK(smith_normal_form(to_big({{0, 0, 0}})).empty());
    // diag(2,4) under a unimodular scramble
    CHECK(smith_normal_form(to_big({{2, 4}, {2, 8}})) == std::vector<BigInt>{2, 4});
    CHECK(smith_normal_form(to_big({{2, 0}, {0, 3}})) == std::vector<BigInt>{1, 6});
}

TEST_CASE("smith normal form is invariant under unimodular operations") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> dim_d(1, 4), val_d(-4, 4), op_d(0, 3), cnt_d(3, 10);
    for (int it = 0; it < 120; ++it) {
        size_t r = size_t(dim_d(rng)), c = size_t(dim_d(rng));
        IntMatrix m(r, std::vector<BigInt>(c));
        for (auto& row : m)
            for (auto& v : row) v = val_d(rng);
        auto base = smith_normal_form(m);

        // cross-check the divisor chain against the raw minor-gcd oracle
        for (int k = 1; k <= int(std::min(r, c)); ++k) {
            BigInt prod = 1;
            bool enough = int(base.size()) >= k;
            for (int i = 0; i < k && enough; ++i) prod *= base[size_t(i)];
            CHECK(oracles::minor_gcd(m, k) == (enough ? prod : BigInt(0)));
        }

        IntMatrix s = m;
        int ops = cnt_d(rng);
        for (int o = 0; o < ops; ++o) {
            switch (op_d(rng)) {
                case 0: {  // add a multiple of one row to another
                    if (r < 2) break;
                    size_t i = size_t(rng() % r), j = size_t(rng() % r);
                    if (i == j) break;
                    long long f = val_d(rng);
                    for (size_t k = 0; k < c; ++k) s[i][k] += f * s[j][k];
                    break;
                }
                case 1: {
                    if (c < 2) break;
                    size_t i = size_t(rng() % c), j = size_t(rng() % c);
                    if (i == j) break;
                    long long f = val_d(rng);
                    for (size_t k = 0; k < r; ++k) s[k][i] += f * s[k][j];
                    break;
                }
                case 2: {
                    size_t i = size_t(rng() % r);
                    for (size_t k = 0; k < c; ++k) s[i][k] = -s[i][k];
                    break;
                }
                default: {
                    if (r < 2) break;
                    std::swap(s[size_t(rng() % r)], s[size_t(rng() % r)]);
                    break;
                }
            }
        }
        CHECK(smith_normal_form(s) == base);
    }
}

TEST_CASE("abelian invariants") {
    // <x | > = Z
    AbelianInvariants z = abelian_invariants({}, 1);
    CHECK(z.is_infinite_cyclic());
    // <x, y | x y^-1> = Z
    AbelianInvariants z2 = abelian_invariants(to_big({{1, -1}}), 2);
    CHECK(z2.is_infinite_cyclic());
    // Z_2 x Z
    AbelianInvariants t = abelian_invariants(to_big({{2, 0}}), 2);
    CHECK(!t.is_infinite_cyclic());
    REQUIRE(t.torsion.size() == 1);
    CHECK(t.torsion[0] == 2);
    CHECK(t.free_rank == 1);
}

TEST_CASE("rank over prime fields") {
    CHECK(rank_mod_p(to_big({{1, 0}, {0, 1}}), 3) == 2);
    CHECK(rank_mod_p(to_big({{3, 3}, {6, 9}}), 3) == 0);
    CHECK(rank_mod_p(to_big({{3, 3}, {6, 9}}), 5) == 2);
    CHECK(rank_mod_p(to_big({{2, 4}}), 2) == 0);
}

TEST_CASE("determinantal divisors") {
    IntMatrix m = to_big({{2, 0}, {0, 4}});
    CHECK(determinantal_divisor(m, 0) == 1);
    CHECK(determinantal_divisor(m, 1) == 2);
    CHECK(determinantal_divisor(m, 2) == 8);
    CHECK(determinantal_divisor(m, 3) == 0);
}
