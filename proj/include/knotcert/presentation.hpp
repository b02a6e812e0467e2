#pragma once

// Finite group presentations with marked meridian generators and a
// distinguished meridian. Relators are stored cyclically reduced and
// deduplicated under cyclic rotation and inversion, which keeps coset
// enumeration inputs small.

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotcert/word.hpp"

namespace knotcert {

class Presentation {
public:
    Presentation() = default;

    Presentation(int gen_count, std::vector<Word> relators, std::vector<bool> meridian_flags,
                 GenId distinguished)
        : gen_count_(gen_count),
          meridian_(std::move(meridian_flags)),
          distinguished_(distinguished) {
        if (gen_count_ <= 0) throw std::invalid_argument("presentation needs a generator");
        if (static_cast<int>(meridian_.size()) != gen_count_)
            throw std::invalid_argument("meridian flag count mismatch");
        if (distinguished_ < 0 || distinguished_ >= gen_count_ ||
            !meridian_[static_cast<size_t>(distinguished_)])
            throw std::invalid_argument("distinguished generator must be a flagged meridian");
        bool any = false;
        for (bool b : meridian_) any = any || b;
        if (!any) throw std::invalid_argument("at least one meridian required");
        for (auto& r : relators) add_relator(r);
    }

    static Presentation all_meridian(int gen_count, std::vector<Word> relators,
                                     GenId distinguished = 0) {
        return Presentation(gen_count, std::move(relators),
                            std::vector<bool>(static_cast<size_t>(gen_count), true),
                            distinguished);
    }

    int gen_count() const { return gen_count_; }
    const std::vector<Word>& relators() const { return relators_; }
    const std::vector<bool>& meridian_flags() const { return meridian_; }
    GenId distinguished_meridian() const { return distinguished_; }

    bool is_meridian(GenId g) const {
        return g >= 0 && g < gen_count_ && meridian_[static_cast<size_t>(g)];
    }

    bool all_generators_meridian() const {
        for (bool b : meridian_) if (!b) return false;
        return true;
    }

    // Cyclically reduces, drops trivial relators, dedups under rotation
    // and inversion.
    void add_relator(const Word& r) {
        Word c = r.cyclically_reduced();
        if (c.is_identity()) return;
        for (const auto& s : c.syllables())
            if (s.gen < 0 || s.gen >= gen_count_)
                throw std::out_of_range("relator uses unknown generator");
        std::string key = cyclic_key(c);
        if (relator_keys_.count(key)) return;
        relator_keys_.insert(key);
        relators_.push_back(c);
    }

    // Relator-by-generator signed exponent matrix (abelianization).
    std::vector<std::vector<long long>> exponent_matrix() const {
        std::vector<std::vector<long long>> m;
        m.reserve(relators_.size());
        for (const auto& r : relators_) m.push_back(r.exponent_vector(gen_count_));
        return m;
    }

    // Canonical serialization; certificate hashes are digests of this.
    std::string canonical_string() const {
        std::string s = "gens=" + std::to_string(gen_count_) + ";mer=";
        for (bool b : meridian_) s += b ? '1' : '0';
        s += ";dist=" + std::to_string(distinguished_) + ";rel=";
        std::vector<std::string> rs;
        rs.reserve(relators_.size());
        for (const auto& r : relators_) rs.push_back(r.str());
        std::sort(rs.begin(), rs.end());
        for (const auto& r : rs) {
            s += r;
            s += ',';
        }
        return s;
    }

    std::string hash_hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(canonical_string())));
        return std::string(buf);
    }

    void check_valid() const {
        for (const auto& r : relators_) {
            if (!(r == r.cyclically_reduced()))
                throw std::logic_error("relator not cyclically reduced");
            if (r.is_identity()) throw std::logic_error("trivial relator stored");
        }
        if (!meridian_[static_cast<size_t>(distinguished_)])
            throw std::logic_error("distinguished generator lost meridian flag");
    }

private:
    static std::string cyclic_key(const Word& w) {
        auto best_of = [](const Word& v) {
            auto ls = v.letters();
            std::string best;
            for (size_t r = 0; r < ls.size(); ++r) {
                std::string cur;
                for (size_t i = 0; i < ls.size(); ++i) {
                    auto l = ls[(r + i) % ls.size()];
                    cur += std::to_string(Word::letter_rank(l));
                    cur += '.';
                }
                if (best.empty() || cur < best) best = cur;
            }
            return best;
        };
        std::string a = best_of(w);
        std::string b = best_of(w.inverse());
        return a < b ? a : b;
    }

    int gen_count_ = 1;
    std::vector<Word> relators_;
    std::set<std::string> relator_keys_;
    std::vector<bool> meridian_ = {true};
    GenId distinguished_ = 0;
};

}  // namespace knotcert
