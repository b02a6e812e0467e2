#include <catch2/catch_amalgamated.hpp>

#include "knotcert/catalog.hpp"
#include "knotcert/coset.hpp"

using namespace knotcert;

namespace {

Presentation catalog_knot(const std::string& name) {
    return presentation_from_entry(default_catalog().at(name));
}

Budget small_budget(long long max_cosets) {
    Budget b;
    b.max_cosets = max_cosets;
    return b;
}

}  // namespace

TEST_CASE("trivial and cyclic enumerations") {
    // <x | x^5>, trivial subgroup: index 5
    Presentation C5(1, {Word::generator(0, 5)}, {true}, 0);
    CosetTable t = todd_coxeter(C5, {}, small_budget(1000));
    REQUIRE(t.completed());
    CHECK(t.index == 5);
    CHECK(t.verify(C5, {}));

    // same group over the full subgroup: index 1
    CosetTable t1 = todd_coxeter(C5, {Word::generator(0)}, small_budget(1000));
    REQUIRE(t1.completed());
    CHECK(t1.index == 1);
}

TEST_CASE("symmetric group S3 as a Coxeter quotient") {
    // < a, b | a^2, b^2, (ab)^3 > = S3, subgroup <a> has index 3
    Word a = Word::generator(0), b = Word::generator(1);
    Presentation S3(2, {a.pow(2), b.pow(2), (a * b).pow(3)}, {true, true}, 0);
    CosetTable t = todd_coxeter(S3, {a}, small_budget(1000));
    REQUIRE(t.completed());
    CHECK(t.index == 3);
    CHECK(t.verify(S3, {a}));

    CosetTable full = todd_coxeter(S3, {}, small_budget(1000));
    REQUIRE(full.completed());
    CHECK(full.index == 6);
}

TEST_CASE("trefoil meridian subgroup vs meridian quotient") {
    // the cyclic subgroup generated by one meridian has infinite index,
    // so enumeration can only exhaust its budget
    Presentation T = catalog_knot("3_1");
    Word x = Word::generator(T.distinguished_meridian());
    Budget b = small_budget(10'000);
    b.time_limit_seconds = 10.0;
    CosetTable t = todd_coxeter(T, {x}, b);
    CHECK_FALSE(t.completed());

    // killing the meridian outright trivializes the whole group
    Presentation Q = T;
    Q.add_relator(x);
    CosetTable q = todd_coxeter(Q, {}, small_budget(10'000));
    REQUIRE(q.completed());
    CHECK(q.index == 1);
    CHECK(q.verify(Q, {}));
}

TEST_CASE("twist spins of the trefoil: meridian coset counts") {
    Presentation T = catalog_knot("3_1");
    Word x = Word::generator(T.distinguished_meridian());
    // 1-twist spin is unknotted: index 1
    CosetTable t1 = todd_coxeter(twist_spin(T, 1), {x}, small_budget(50'000));
    REQUIRE(t1.completed());
    CHECK(t1.index == 1);
    // 2-twist spin: the quotient by <x> has 3 cosets (the group surjects
    // onto D_3 with x a reflection)
    CosetTable t2 = todd_coxeter(twist_spin(T, 2), {x}, small_budget(50'000));
    REQUIRE(t2.completed());
    CHECK(t2.index == 3);
}

TEST_CASE("budget exhaustion is inconclusive, not an error") {
    // the trefoil group is infinite; the trivial subgroup can never close
    Presentation T = catalog_knot("3_1");
    Budget b = small_budget(200);
    b.time_limit_seconds = 5.0;
    CosetTable t = todd_coxeter(T, {}, b);
    CHECK_FALSE(t.completed());
    CHECK(t.status == CosetTable::Status::Exhausted);
}

TEST_CASE("verify rejects corrupted tables") {
    Presentation C3(1, {Word::generator(0, 3)}, {true}, 0);
    CosetTable t = todd_coxeter(C3, {}, small_budget(100));
    REQUIRE(t.completed());
    REQUIRE(t.index == 3);
    CHECK(t.verify(C3, {}));

    CosetTable broken = t;
    std::swap(broken.rows[0][0], broken.rows[1][0]);
    CHECK_FALSE(broken.verify(C3, {}));

    CosetTable wrong_count = t;
    wrong_count.index = 2;
    CHECK_FALSE(wrong_count.verify(C3, {}));

    // a table that ignores the subgroup generators
    CosetTable s = t;
    CHECK_FALSE(s.verify(C3, {Word::generator(0)}));  // 0 * x = 1 != 0

    // non-transitive table: two disjoint fixed points for <x | x>
    Presentation Free1(1, {Word::generator(0) * Word::generator(0, -1)}, {true}, 0);
    CosetTable nt;
    nt.status = CosetTable::Status::Completed;
    nt.index = 2;
    nt.gen_count = 1;
    nt.rows = {{0, 0}, {1, 1}};
    CHECK_FALSE(nt.verify(Free1, {}));
}
