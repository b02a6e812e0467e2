#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "knotcert/catalog.hpp"
#include "knotcert/constructors.hpp"
#include "knotcert/fox.hpp"
#include "knotcert/snf.hpp"

using namespace knotcert;

namespace {

Presentation catalog_knot(const std::string& name) {
    return presentation_from_entry(default_catalog().at(name));
}

}  // namespace

TEST_CASE("unknot presentation") {
    Presentation U = unknot_presentation();
    CHECK(U.gen_count() == 1);
    CHECK(U.relators().empty());
    CHECK(determinant(U) == 1);
    AbelianInvariants ab = abelian_invariants(to_big(U.exponent_matrix()), U.gen_count());
    CHECK(ab.is_infinite_cyclic());
}

TEST_CASE("connected sum") {
    Presentation T = catalog_knot("3_1"), F = catalog_knot("4_1");
    Presentation S = connected_sum(T, F);
    CHECK(S.gen_count() == T.gen_count() + F.gen_count());
    CHECK(S.distinguished_meridian() == T.distinguished_meridian());
    CHECK(S.all_generators_meridian());
    // knot groups abelianize to Z; connected sums preserve this
    AbelianInvariants ab = abelian_invariants(to_big(S.exponent_matrix()), S.gen_count());
    CHECK(ab.is_infinite_cyclic());
    // determinant is multiplicative under connected sum
    CHECK(determinant(S) == 15);
    CHECK(determinant(connected_sum(T, T)) == 9);
    CHECK(determinant(connected_sum(T, unknot_presentation())) == 3);
}

TEST_CASE("twist spin determinant law on the trefoil") {
    Presentation T = catalog_knot("3_1");
    CHECK_THROWS(twist_spin(T, -1));
    CHECK(twist_spin(T, 0).hash_hex() == T.hash_hex());
    for (long long n = 0; n <= 5; ++n) {
        BigInt d = determinant(twist_spin(T, n));
        CHECK(d == (n % 2 == 0 ? 3 : 1));
    }
}

TEST_CASE("twist spin centralizes the meridian power") {
    Presentation T = catalog_knot("3_1");
    Presentation P = twist_spin(T, 2);
    CHECK(P.gen_count() == T.gen_count());
    // one commutator relator per generator on top of the originals
    // ([x^2, x] is trivial and gets dropped)
    CHECK(P.relators().size() == T.relators().size() + 1);
    Word x = Word::generator(T.distinguished_meridian());
    Presentation Q = P;
    Q.add_relator(commutator(x.pow(2), Word::generator(1)));
    CHECK(Q.relators().size() == P.relators().size());
}

TEST_CASE("ribbon presentations") {
    // no fusions: the unknotted sphere
    Presentation R0 = ribbon_presentation(0, {});
    CHECK(R0.gen_count() == 1);
    CHECK(R0.relators().empty());

    // one fusion with conjugator x1: m0^{x1} = m1
    Presentation R1 = ribbon_presentation(1, {Word::generator(1)});
    CHECK(R1.gen_count() == 2);
    REQUIRE(R1.relators().size() == 1);
    AbelianInvariants ab = abelian_invariants(to_big(R1.exponent_matrix()), R1.gen_count());
    CHECK(ab.is_infinite_cyclic());

    CHECK_THROWS(ribbon_presentation(1, {}));
    CHECK_THROWS(ribbon_presentation(-1, {}));
    CHECK_THROWS(ribbon_presentation(1, {Word::generator(5)}));
}

TEST_CASE("stabilization and finger-move relations") {
    Presentation T = catalog_knot("3_1");
    Word g = Word::generator(1);

    Presentation S = add_stabilization_relation(T, g, 0, 1);
    CHECK(S.relators().size() == T.relators().size() + 1);
    // the added relator is g^-1 a g b^-1
    Presentation S2 = S;
    S2.add_relator(g.inverse() * Word::generator(0) * g * Word::generator(1, -1));
    CHECK(S2.relators().size() == S.relators().size());

    Presentation F = add_finger_move_relation(T, g, 0, 1);
    CHECK(F.relators().size() == T.relators().size() + 1);
    Presentation F2 = F;
    F2.add_relator(commutator(Word::generator(0), conjugate(Word::generator(1), g)));
    CHECK(F2.relators().size() == F.relators().size());

    // [a, g^-1 a g] with g the identity is trivial and gets dropped
    Presentation triv = add_finger_move_relation(T, Word::identity(), 0, 0);
    CHECK(triv.relators().size() == T.relators().size());

    Presentation mixed(2, {}, {true, false}, 0);
    CHECK_THROWS(add_stabilization_relation(mixed, g, 0, 1));
    CHECK_THROWS(add_finger_move_relation(mixed, g, 0, 1));
}

TEST_CASE("dihedral product normal forms") {
    const long long p1 = 3, p2 = 3;
    auto z = nf_make(p1, p2, {}, true);
    auto a1 = nf_make(p1, p2, {{1, 1}}, false);
    auto a2 = nf_make(p1, p2, {{2, 1}}, false);

    CHECK(nf_multiply(p1, p2, z, z).is_identity());
    // z a_i z = a_i^-1
    auto zaz = nf_multiply(p1, p2, nf_multiply(p1, p2, z, a1), z);
    CHECK(zaz == nf_inverse(p1, p2, a1));
    // a_i^p = 1
    auto cube = nf_multiply(p1, p2, nf_multiply(p1, p2, a1, a1), a1);
    CHECK(cube.is_identity());
    // (a1 z)^-1 = a1 z  (reflections are involutions)
    auto refl = nf_multiply(p1, p2, a1, z);
    CHECK(nf_inverse(p1, p2, refl) == refl);
    CHECK(nf_multiply(p1, p2, refl, refl).is_identity());
    // free-product letters alternate and do not collapse
    auto mixed = nf_multiply(p1, p2, a1, a2);
    CHECK(mixed.word.size() == 2);
    CHECK(mixed.str() == "a1^1.a2^1");
    CHECK(z.str() == "z");
    CHECK(nf_make(p1, p2, {}).str() == "1");
}

TEST_CASE("dihedral product multiplication is associative (exhaustive short words)") {
    const long long p1 = 3, p2 = 3;
    // all products of up to 2 letters from {z, a1, a2, a1^2, a2^2}
    std::vector<DihedralProductElement> atoms = {
        nf_make(p1, p2, {}, true),        nf_make(p1, p2, {{1, 1}}),
        nf_make(p1, p2, {{2, 1}}),        nf_make(p1, p2, {{1, 2}}),
        nf_make(p1, p2, {{2, 2}}),        nf_make(p1, p2, {}),
    };
    std::vector<DihedralProductElement> elems;
    for (const auto& u : atoms)
        for (const auto& v : atoms) elems.push_back(nf_multiply(p1, p2, u, v));
    for (const auto& a : elems)
        for (const auto& b : elems)
            for (const auto& c : elems) {
                auto lhs = nf_multiply(p1, p2, nf_multiply(p1, p2, a, b), c);
                auto rhs = nf_multiply(p1, p2, a, nf_multiply(p1, p2, b, c));
                CHECK(lhs == rhs);
            }
    for (const auto& a : elems) {
        CHECK(nf_multiply(p1, p2, a, nf_inverse(p1, p2, a)).is_identity());
        CHECK(nf_multiply(p1, p2, nf_inverse(p1, p2, a), a).is_identity());
    }
}

TEST_CASE("dihedral product group presentation") {
    Presentation G = dihedral_product_group(3, 5);
    CHECK(G.gen_count() == 3);
    CHECK(G.distinguished_meridian() == 0);
    CHECK(G.is_meridian(0));
    CHECK_FALSE(G.is_meridian(1));
    // abelianization is Z_2 (the a_i die: a_i = a_i^-1 and a_i^{p_i} = 1
    // with p_i odd)
    AbelianInvariants ab = abelian_invariants(to_big(G.exponent_matrix()), G.gen_count());
    CHECK(ab.free_rank == 0);
    REQUIRE(ab.torsion.size() == 1);
    CHECK(ab.torsion[0] == 2);
    CHECK_THROWS(dihedral_product_group(4, 3));
    CHECK_THROWS(dihedral_product_group(3, 9));
}

TEST_CASE("word evaluation in the dihedral product kills the relators") {
    const long long p1 = 3, p2 = 5;
    Presentation G = dihedral_product_group(p1, p2);
    std::vector<DihedralProductElement> assign = {
        nf_make(p1, p2, {}, true),
        nf_make(p1, p2, {{1, 1}}),
        nf_make(p1, p2, {{2, 1}}),
    };
    for (const auto& r : G.relators())
        CHECK(evaluate_in_G(p1, p2, r, assign).is_identity());

    // [z, z^v] = (rotation by 4m) in the dihedral projection: for
    // v = a1^m the commutator [z, v^-1 z v] is a rotation, never z
    Word z = Word::generator(0), a1w = Word::generator(1);
    for (long long m = 0; m < 3; ++m) {
        Word h = commutator(z, conjugate(z, a1w.pow(m)));
        auto img = evaluate_in_G(p1, p2, h, assign);
        CHECK_FALSE(img.z_flag);
        CHECK((img.is_identity() == (4 * m % p1 == 0)));
    }
}
