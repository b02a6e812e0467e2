#pragma once

// Free-group calculus over indexed generators. Words are kept freely
// reduced in syllable (run-length) form at all times; relator words in
// twist-spin presentations carry high powers, so letter form would waste
// both memory and reduction passes.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotcert {

using GenId = int;

struct Syllable {
    GenId gen;
    long long exp;  // never zero
    friend bool operator==(const Syllable&, const Syllable&) = default;
};

class Word {
public:
    Word() = default;

    // Free reduction: merges adjacent syllables with equal generator,
    // drops zero exponents, cascades cancellations.
    static Word reduce(const std::vector<Syllable>& raw) {
        Word w;
        for (const auto& s : raw) w.push_syllable(s.gen, s.exp);
        return w;
    }

    static Word generator(GenId g, long long e = 1) {
        Word w;
        w.push_syllable(g, e);
        return w;
    }

    static Word identity() { return Word(); }

    bool is_identity() const { return syllables_.empty(); }

    const std::vector<Syllable>& syllables() const { return syllables_; }

    // Total letter count (sum of |exponent|).
    long long length() const {
        long long n = 0;
        for (const auto& s : syllables_) n += s.exp < 0 ? -s.exp : s.exp;
        return n;
    }

    GenId max_generator() const {
        GenId m = -1;
        for (const auto& s : syllables_) m = std::max(m, s.gen);
        return m;
    }

    Word inverse() const {
        Word w;
        w.syllables_.reserve(syllables_.size());
        for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
            w.syllables_.push_back({it->gen, -it->exp});
        return w;
    }

    Word operator*(const Word& rhs) const {
        Word w = *this;
        for (const auto& s : rhs.syllables_) w.push_syllable(s.gen, s.exp);
        return w;
    }

    Word pow(long long n) const {
        if (n == 0) return Word();
        Word base = n > 0 ? *this : inverse();
        long long k = n > 0 ? n : -n;
        Word acc;
        for (long long i = 0; i < k; ++i) acc = acc * base;
        return acc;
    }

    // g^{-1} * a * g
    friend Word conjugate(const Word& a, const Word& g) {
        return g.inverse() * a * g;
    }

    // [a,b] = a^{-1} b^{-1} a b; chosen so that a^g = a * [a,g].
    friend Word commutator(const Word& a, const Word& b) {
        return a.inverse() * b.inverse() * a * b;
    }

    Word cyclically_reduced() const {
        Word w = *this;
        while (w.syllables_.size() >= 2 &&
               w.syllables_.front().gen == w.syllables_.back().gen) {
            Syllable first = w.syllables_.front();
            Syllable last = w.syllables_.back();
            w.syllables_.erase(w.syllables_.begin());
            w.syllables_.pop_back();
            long long e = first.exp + last.exp;
            if (e != 0) {
                // reattach the merged syllable at the back
                Word tail;
                tail.push_syllable(first.gen, e);
                w = w * tail;
                break;
            }
        }
        if (w.syllables_.size() >= 2 &&
            w.syllables_.front().gen == w.syllables_.back().gen)
            return w.cyclically_reduced();
        return w;
    }

    // Signed exponent sum per generator.
    std::vector<long long> exponent_vector(int gen_count) const {
        std::vector<long long> v(static_cast<size_t>(gen_count), 0);
        for (const auto& s : syllables_) {
            if (s.gen < 0 || s.gen >= gen_count)
                throw std::out_of_range("generator index out of range");
            v[static_cast<size_t>(s.gen)] += s.exp;
        }
        return v;
    }

    // Image in the abelianization when every generator maps to the same
    // element; zero total exponent = commutator-subgroup membership for
    // all-meridian presentations.
    long long total_exponent() const {
        long long t = 0;
        for (const auto& s : syllables_) t += s.exp;
        return t;
    }

    // Expansion into single letters (gen, +-1); used by coset enumeration
    // and canonical cyclic forms.
    std::vector<std::pair<GenId, int>> letters() const {
        std::vector<std::pair<GenId, int>> out;
        out.reserve(static_cast<size_t>(length()));
        for (const auto& s : syllables_) {
            int sign = s.exp > 0 ? 1 : -1;
            long long k = s.exp > 0 ? s.exp : -s.exp;
            for (long long i = 0; i < k; ++i) out.emplace_back(s.gen, sign);
        }
        return out;
    }

    static Word from_letters(const std::vector<std::pair<GenId, int>>& ls) {
        Word w;
        for (auto [g, s] : ls) w.push_syllable(g, s);
        return w;
    }

    // Compact text form: x0^2.x1^-1, identity rendered as "1".
    std::string str() const {
        if (syllables_.empty()) return "1";
        std::string out;
        for (size_t i = 0; i < syllables_.size(); ++i) {
            if (i) out += '.';
            out += 'x';
            out += std::to_string(syllables_[i].gen);
            if (syllables_[i].exp != 1) {
                out += '^';
                out += std::to_string(syllables_[i].exp);
            }
        }
        return out;
    }

    static Word parse(const std::string& text) {
        Word w;
        if (text == "1" || text.empty()) return w;
        size_t i = 0;
        while (i < text.size()) {
            if (text[i] != 'x') throw std::invalid_argument("bad word: " + text);
            ++i;
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == i) throw std::invalid_argument("bad word: " + text);
            GenId g = std::stoi(text.substr(i, j - i));
            long long e = 1;
            i = j;
            if (i < text.size() && text[i] == '^') {
                ++i;
                j = i;
                if (j < text.size() && text[j] == '-') ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                e = std::stoll(text.substr(i, j - i));
                i = j;
            }
            w.push_syllable(g, e);
            if (i < text.size()) {
                if (text[i] != '.') throw std::invalid_argument("bad word: " + text);
                ++i;
            }
        }
        return w;
    }

    friend bool operator==(const Word&, const Word&) = default;

    // Length-then-lexicographic; the global enumeration order of the
    // whole artifact. Letter rank: (generator index, sign) with positive
    // before negative.
    friend bool lenlex_less(const Word& a, const Word& b) {
        long long la = a.length(), lb = b.length();
        if (la != lb) return la < lb;
        auto ra = a.letters(), rb = b.letters();
        for (size_t i = 0; i < ra.size(); ++i) {
            int ka = letter_rank(ra[i]), kb = letter_rank(rb[i]);
            if (ka != kb) return ka < kb;
        }
        return false;
    }

    static int letter_rank(std::pair<GenId, int> l) {
        return 2 * l.first + (l.second < 0 ? 1 : 0);
    }

private:
    void push_syllable(GenId g, long long e) {
        if (e == 0) return;
        if (!syllables_.empty() && syllables_.back().gen == g) {
            syllables_.back().exp += e;
            if (syllables_.back().exp == 0) syllables_.pop_back();
            return;
        }
        syllables_.push_back({g, e});
    }

    std::vector<Syllable> syllables_;
};

struct WordLenLex {
    bool operator()(const Word& a, const Word& b) const { return lenlex_less(a, b); }
};

// Map from generators to words in a target alphabet, extended
// multiplicatively to words.
struct Homomorphism {
    std::vector<Word> images;  // one per source generator
    int target_gen_count = 0;

    static Homomorphism identity(int gen_count) {
        Homomorphism h;
        h.target_gen_count = gen_count;
        h.images.reserve(static_cast<size_t>(gen_count));
        for (GenId g = 0; g < gen_count; ++g) h.images.push_back(Word::generator(g));
        return h;
    }

    Word apply(const Word& w) const {
        Word out;
        for (const auto& s : w.syllables()) {
            if (s.gen < 0 || static_cast<size_t>(s.gen) >= images.size())
                throw std::out_of_range("unmapped generator in homomorphism");
            out = out * images[static_cast<size_t>(s.gen)].pow(s.exp);
        }
        return out;
    }
};

namespace detail {

// Orbit of w under conjugation by powers of m. Reduced length is convex
// in the power, so walking each direction until the length exceeds the
// start suffices to find every orbit member at most as long as w.
inline bool is_meridian_orbit_minimum(const Word& w, GenId m) {
    const Word mg = Word::generator(m);
    auto visit_dir = [&](int dir) {
        Word cur = w;
        for (;;) {
            cur = dir > 0 ? conjugate(cur, mg) : mg * cur * mg.inverse();
            if (cur.length() > w.length()) return false;
            if (cur == w) return false;  // orbit cycled back; nothing smaller this way
            if (lenlex_less(cur, w)) return true;  // found smaller member
        }
    };
    if (visit_dir(+1)) return false;
    if (visit_dir(-1)) return false;
    return true;
}

template <typename Fn>
inline void enumerate_reduced_words(int gen_count, int max_length, Fn&& emit) {
    std::vector<std::pair<GenId, int>> stack;
    // letters in rank order: x0, x0^-1, x1, x1^-1, ...
    std::function<void()> rec = [&]() {
        emit(stack);
        if (static_cast<int>(stack.size()) >= max_length) return;
        for (GenId g = 0; g < gen_count; ++g) {
            for (int s : {1, -1}) {
                if (!stack.empty() && stack.back().first == g && stack.back().second == -s)
                    continue;  // would cancel
                stack.emplace_back(g, s);
                rec();
                stack.pop_back();
            }
        }
    };
    rec();
}

}  // namespace detail

// Freely reduced words of length <= max_length with zero total exponent,
// exactly once per equivalence class under pre/post multiplication by
// powers of the distinguished meridian (a boundary twist on the induced
// relator). Order: length-then-lexicographic.
template <typename Fn>
void enumerate_candidate_conjugators(int gen_count, GenId meridian, int max_length, Fn&& emit) {
    for (int target = 0; target <= max_length; ++target) {
        detail::enumerate_reduced_words(gen_count, target, [&](const auto& letters) {
            if (static_cast<int>(letters.size()) != target) return;
            Word w = Word::from_letters(letters);
            if (w.total_exponent() != 0) return;
            if (static_cast<int>(letters.size()) != w.length()) return;  // only reduced spellings
            if (!detail::is_meridian_orbit_minimum(w, meridian)) return;
            emit(w);
        });
    }
}

inline std::vector<Word> candidate_conjugators(int gen_count, GenId meridian, int max_length,
                                               size_t max_candidates = SIZE_MAX) {
    std::vector<Word> out;
    enumerate_candidate_conjugators(gen_count, meridian, max_length, [&](const Word& w) {
        if (out.size() < max_candidates) out.push_back(w);
    });
    return out;
}

// FNV-1a over a canonical byte string; certificates are content-addressed
// by this digest.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace knotcert
