#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "knotcert/word.hpp"

using namespace knotcert;

namespace {
const Word x = Word::generator(0);
const Word y = Word::generator(1);
const Word z = Word::generator(2);
}  // namespace

TEST_CASE("free reduction") {
    CHECK(Word::reduce({{0, 1}, {0, -1}}).is_identity());
    CHECK(Word::reduce({{0, 1}, {1, 1}, {1, -1}, {2, 1}}) == x * z);
    CHECK(Word::reduce({{0, 2}, {0, 3}}) == Word::generator(0, 5));
    // zero exponents are dropped
    CHECK(Word::reduce({{0, 0}, {1, 1}, {1, 0}}) == y);
}

TEST_CASE("reduction is idempotent on random raw input") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> gen_d(0, 2), exp_d(-3, 3), len_d(0, 12);
    for (int it = 0; it < 500; ++it) {
        std::vector<Syllable> raw;
        int len = len_d(rng);
        for (int i = 0; i < len; ++i) raw.push_back({gen_d(rng), exp_d(rng)});
        Word w = Word::reduce(raw);
        CHECK(Word::reduce(w.syllables()) == w);
        // representation invariant: adjacent syllables differ, no zero exponent
        for (size_t i = 0; i < w.syllables().size(); ++i) {
            CHECK(w.syllables()[i].exp != 0);
            if (i) CHECK(w.syllables()[i].gen != w.syllables()[i - 1].gen);
        }
    }
}

TEST_CASE("conjugation") {
    CHECK(conjugate(x, Word::identity()) == x);
    CHECK(conjugate(x, x) == x);
    CHECK(conjugate(x, y) == y.inverse() * x * y);
}

TEST_CASE("conjugation is a right action") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> gen_d(0, 2), sign_d(0, 1), len_d(0, 6);
    auto random_word = [&]() {
        Word w;
        int len = len_d(rng);
        for (int i = 0; i < len; ++i) w = w * Word::generator(gen_d(rng), sign_d(rng) ? 1 : -1);
        return w;
    };
    for (int it = 0; it < 300; ++it) {
        Word a = random_word(), g = random_word(), h = random_word();
        CHECK(conjugate(conjugate(a, g), h) == conjugate(a, g * h));
    }
}

TEST_CASE("commutator convention") {
    CHECK(commutator(x, x).is_identity());
    CHECK(commutator(x, y) == x.inverse() * y.inverse() * x * y);
    Word w = y * x * y.inverse();
    CHECK(conjugate(x, w) == x * commutator(x, w));
}

TEST_CASE("x^w equals x*[x,w] for all short words over 3 generators") {
    // exhaustive over freely reduced words of length <= 4
    std::vector<Word> words;
    detail::enumerate_reduced_words(3, 4, [&](const auto& letters) {
        words.push_back(Word::from_letters(letters));
    });
    for (const auto& a : words)
        for (const auto& w : words) CHECK(conjugate(a, w) == a * commutator(a, w));
}

TEST_CASE("exponent vectors") {
    CHECK(Word::identity().exponent_vector(2) == std::vector<long long>{0, 0});
    CHECK(commutator(x, y).exponent_vector(2) == std::vector<long long>{0, 0});
    Word w = Word::generator(0, 2) * Word::generator(1, -1);
    CHECK(w.exponent_vector(2) == std::vector<long long>{2, -1});
    CHECK_THROWS_AS(z.exponent_vector(2), std::out_of_range);
}

TEST_CASE("exponent vector is additive") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> gen_d(0, 2), sign_d(0, 1), len_d(0, 8);
    auto random_word = [&]() {
        Word w;
        int len = len_d(rng);
        for (int i = 0; i < len; ++i) w = w * Word::generator(gen_d(rng), sign_d(rng) ? 1 : -1);
        return w;
    };
    for (int it = 0; it < 300; ++it) {
        Word u = random_word(), v = random_word();
        auto eu = u.exponent_vector(3), ev = v.exponent_vector(3),
             euv = (u * v).exponent_vector(3);
        for (int i = 0; i < 3; ++i) CHECK(euv[size_t(i)] == eu[size_t(i)] + ev[size_t(i)]);
    }
}

TEST_CASE("homomorphism application") {
    Homomorphism id = Homomorphism::identity(3);
    Word w = x * y.inverse() * z;
    CHECK(id.apply(w) == w);

    Homomorphism collapse;  // x -> z, y -> z
    collapse.target_gen_count = 3;
    collapse.images = {z, z};
    CHECK(collapse.apply(x * y.inverse()).is_identity());

    Homomorphism sub;  // x -> ab, y -> b
    sub.target_gen_count = 2;
    sub.images = {Word::generator(0) * Word::generator(1), Word::generator(1)};
    CHECK(sub.apply(x * y.inverse()) == Word::generator(0));

    // multiplicative on random pairs
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> gen_d(0, 1), sign_d(0, 1), len_d(0, 6);
    auto random_word = [&]() {
        Word w2;
        int len = len_d(rng);
        for (int i = 0; i < len; ++i) w2 = w2 * Word::generator(gen_d(rng), sign_d(rng) ? 1 : -1);
        return w2;
    };
    for (int it = 0; it < 200; ++it) {
        Word u = random_word(), v = random_word();
        CHECK(sub.apply(u * v) == sub.apply(u) * sub.apply(v));
    }
}

TEST_CASE("word text round-trip") {
    Word w = Word::generator(0, 2) * Word::generator(1, -1);
    CHECK(w.str() == "x0^2.x1^-1");
    CHECK(Word::parse("x0^2.x1^-1") == w);
    CHECK(Word::identity().str() == "1");
    CHECK(Word::parse("1").is_identity());
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> gen_d(0, 4), sign_d(0, 1), len_d(0, 10);
    for (int it = 0; it < 300; ++it) {
        Word w2;
        int len = len_d(rng);
        for (int i = 0; i < len; ++i) w2 = w2 * Word::generator(gen_d(rng), sign_d(rng) ? 1 : -1);
        CHECK(Word::parse(w2.str()) == w2);
    }
}

TEST_CASE("cyclic reduction") {
    Word w = y.inverse() * x * y;
    CHECK(w.cyclically_reduced() == x);
    Word v = x * y * x.inverse();
    CHECK(v.cyclically_reduced() == y);
    CHECK((x * y).cyclically_reduced() == x * y);
}

TEST_CASE("candidate conjugators: degenerate cases") {
    auto zero = candidate_conjugators(2, 0, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].is_identity());

    auto len2 = candidate_conjugators(2, 0, 2);
    // identity plus exactly two length-2 classes: the class of x y^-1
    // and the (distinct) class of y x^-1
    REQUIRE(len2.size() == 3);
    CHECK(len2[0].is_identity());
    auto equivalent = [](const Word& u, const Word& v) {
        const Word m = Word::generator(0);
        for (int a = -4; a <= 4; ++a)
            if (m.pow(a) * u * m.pow(-a) == v) return true;
        return false;
    };
    int cls_xyinv = 0, cls_yxinv = 0;
    for (const auto& w : len2) {
        CHECK(w.total_exponent() == 0);
        if (equivalent(x * y.inverse(), w)) ++cls_xyinv;
        if (equivalent(y * x.inverse(), w)) ++cls_yxinv;
    }
    CHECK(cls_xyinv == 1);
    CHECK(cls_yxinv == 1);
}

TEST_CASE("candidate conjugators: pairwise inequivalence (exhaustive small case)") {
    for (int gens = 1; gens <= 3; ++gens) {
        auto cands = candidate_conjugators(gens, 0, 4);
        // equivalence: w ~ m^a w m^b; enumerate a, b in a window wide
        // enough for length-4 words
        const Word m = Word::generator(0);
        std::set<std::string> seen;
        for (const auto& w : cands) {
            CHECK(w.total_exponent() == 0);
            CHECK(!seen.count(w.str()));
            for (int a = -5; a <= 5; ++a)
                for (int b = -5; b <= 5; ++b) {
                    Word e = m.pow(a) * w * m.pow(b);
                    if (e.total_exponent() != 0) continue;  // not even a candidate
                    seen.insert(e.str());
                }
        }
        // enumeration order is length-then-lex
        for (size_t i = 1; i < cands.size(); ++i) CHECK(!lenlex_less(cands[i], cands[i - 1]));
    }
}
