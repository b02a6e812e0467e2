#pragma once

// Todd-Coxeter coset enumeration, HLT-style (relator scanning with
// fill) with full coincidence processing. Completed tables certify the
// subgroup index; Exhausted is an inconclusive first-class result.

#include <chrono>
#include <cstdint>

#include "knotcert/presentation.hpp"

namespace knotcert {

struct Budget {
    long long max_cosets = 1'000'000;
    int max_word_length = 6;
    long long max_candidates = 1'000'000;
    double time_limit_seconds = 300.0;

    Budget scaled_cosets(long long mc) const {
        Budget b = *this;
        b.max_cosets = mc;
        return b;
    }
};

struct CosetTable {
    enum class Status { Completed, Exhausted };
    Status status = Status::Exhausted;
    long long index = 0;
    int gen_count = 0;
    // Compacted action table: row per coset, 2*gen_count columns, the
    // column of generator g is 2g and of its inverse 2g+1.
    std::vector<std::vector<int>> rows;

    bool completed() const { return status == Status::Completed; }

    static int column(GenId g, int sign) { return 2 * g + (sign < 0 ? 1 : 0); }

    // Replay check: a completed table must define a genuine action that
    // satisfies every relator at every coset and fixes coset 0 under
    // every subgroup generator.
    bool verify(const Presentation& P, const std::vector<Word>& subgroup_gens) const {
        if (!completed()) return false;
        if (gen_count != P.gen_count()) return false;
        if (static_cast<long long>(rows.size()) != index || index < 1) return false;
        int n = static_cast<int>(rows.size());
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != 2 * gen_count) return false;
            for (int v : row)
                if (v < 0 || v >= n) return false;
        }
        // mutually inverse columns
        for (int c = 0; c < n; ++c)
            for (GenId g = 0; g < gen_count; ++g) {
                int d = rows[static_cast<size_t>(c)][static_cast<size_t>(2 * g)];
                if (rows[static_cast<size_t>(d)][static_cast<size_t>(2 * g + 1)] != c) return false;
            }
        auto trace = [&](int start, const Word& w) {
            int cur = start;
            for (auto [g, s] : w.letters())
                cur = rows[static_cast<size_t>(cur)][static_cast<size_t>(column(g, s))];
            return cur;
        };
        for (int c = 0; c < n; ++c)
            for (const auto& r : P.relators())
                if (trace(c, r) != c) return false;
        for (const auto& s : subgroup_gens)
            if (trace(0, s) != 0) return false;
        // transitivity: breadth-first reachability from coset 0
        std::vector<bool> seen(static_cast<size_t>(n), false);
        std::vector<int> stack = {0};
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int v : rows[static_cast<size_t>(c)])
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = true;
                    ++reached;
                    stack.push_back(v);
                }
        }
        return reached == n;
    }
};

namespace detail {

class Enumerator {
public:
    Enumerator(const Presentation& P, const std::vector<Word>& subgroup_gens, const Budget& budget)
        : gen_count_(P.gen_count()), budget_(budget) {
        for (const auto& r : P.relators()) relators_.push_back(r.letters());
        for (const auto& s : subgroup_gens) subgroup_.push_back(s.letters());
        start_ = std::chrono::steady_clock::now();
        new_coset();
    }

    CosetTable run() {
        CosetTable out;
        out.gen_count = gen_count_;
        for (const auto& w : subgroup_)
            if (!scan_and_fill(0, w)) return out;  // Exhausted
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(tab_.size()); ++c) {
            if (rep_of(c) != c) continue;
            for (const auto& r : relators_) {
                if (!scan_and_fill(c, r)) return out;
                if (rep_of(c) != c) break;  // this coset just died
            }
            if (rep_of(c) != c) continue;
            // definition pass: relator scans alone can leave columns
            // untouched, so give every live coset a full row of images
            for (int cc = 0; cc < 2 * gen_count_; ++cc) {
                if (entry(c, cc) >= 0) continue;
                if (!within_budget()) return out;
                std::int64_t n = new_coset();
                set_entry(c, cc, n);
                set_entry(n, inv_col(cc), c);
            }
        }
        // completeness: every live entry defined
        std::vector<std::int64_t> live;
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(tab_.size()); ++c)
            if (rep_of(c) == c) live.push_back(c);
        std::vector<std::int64_t> renumber(tab_.size(), -1);
        for (size_t i = 0; i < live.size(); ++i) renumber[static_cast<size_t>(live[i])] =
            static_cast<std::int64_t>(i);
        for (std::int64_t c : live)
            for (std::int64_t v : tab_[static_cast<size_t>(c)])
                if (v < 0) return out;  // a definition or scan ran out of budget mid-row
        out.status = CosetTable::Status::Completed;
        out.index = static_cast<long long>(live.size());
        out.rows.reserve(live.size());
        for (std::int64_t c : live) {
            std::vector<int> row;
            row.reserve(static_cast<size_t>(2 * gen_count_));
            for (std::int64_t v : tab_[static_cast<size_t>(c)])
                row.push_back(static_cast<int>(renumber[static_cast<size_t>(rep_of(v))]));
            out.rows.push_back(std::move(row));
        }
        return out;
    }

private:
    static int col(std::pair<GenId, int> l) { return 2 * l.first + (l.second < 0 ? 1 : 0); }
    static int inv_col(int c) { return c ^ 1; }

    std::int64_t rep_of(std::int64_t c) {
        std::int64_t r = c;
        while (rep_[static_cast<size_t>(r)] != r) r = rep_[static_cast<size_t>(r)];
        while (rep_[static_cast<size_t>(c)] != r) {
            std::int64_t nxt = rep_[static_cast<size_t>(c)];
            rep_[static_cast<size_t>(c)] = r;
            c = nxt;
        }
        return r;
    }

    std::int64_t new_coset() {
        tab_.emplace_back(static_cast<size_t>(2 * gen_count_), -1);
        rep_.push_back(static_cast<std::int64_t>(tab_.size()) - 1);
        return static_cast<std::int64_t>(tab_.size()) - 1;
    }

    bool within_budget() {
        if (static_cast<long long>(tab_.size()) > budget_.max_cosets) return false;
        if ((tab_.size() & 0x3ff) == 0) {
            auto now = std::chrono::steady_clock::now();
            if (std::chrono::duration<double>(now - start_).count() > budget_.time_limit_seconds)
                return false;
        }
        return true;
    }

    void set_entry(std::int64_t a, int c, std::int64_t b) {
        tab_[static_cast<size_t>(a)][static_cast<size_t>(c)] = b;
    }
    std::int64_t entry(std::int64_t a, int c) const {
        return tab_[static_cast<size_t>(a)][static_cast<size_t>(c)];
    }

    void merge(std::int64_t a, std::int64_t b, std::vector<std::int64_t>& queue) {
        a = rep_of(a);
        b = rep_of(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        rep_[static_cast<size_t>(b)] = a;
        queue.push_back(b);
    }

    void coincidence(std::int64_t a, std::int64_t b) {
        std::vector<std::int64_t> queue;
        merge(a, b, queue);
        while (!queue.empty()) {
            std::int64_t dead = queue.back();
            queue.pop_back();
            for (int c = 0; c < 2 * gen_count_; ++c) {
                std::int64_t d = entry(dead, c);
                if (d < 0) continue;
                set_entry(dead, c, -1);
                // the reverse entry pointed back at the dead coset
                if (entry(d, inv_col(c)) == dead) set_entry(d, inv_col(c), -1);
                std::int64_t u = rep_of(dead);
                std::int64_t v = rep_of(d);
                // reinstall the edge u --c--> v in both directions; a clash
                // on either side is a further coincidence
                std::int64_t ex = entry(u, c);
                if (ex >= 0)
                    merge(ex, v, queue);
                else
                    set_entry(u, c, v);
                std::int64_t ex2 = entry(v, inv_col(c));
                if (ex2 >= 0)
                    merge(ex2, u, queue);
                else
                    set_entry(v, inv_col(c), u);
            }
        }
    }

    // Scan word w at coset c, defining new cosets to close the cycle.
    // Returns false only on budget exhaustion.
    bool scan_and_fill(std::int64_t c, const std::vector<std::pair<GenId, int>>& w) {
        if (w.empty()) return true;
        int i = 0;
        int j = static_cast<int>(w.size()) - 1;
        std::int64_t f = rep_of(c);
        std::int64_t b = f;
        for (;;) {
            // forward
            while (i <= j) {
                std::int64_t nxt = entry(f, col(w[static_cast<size_t>(i)]));
                if (nxt < 0) break;
                f = rep_of(nxt);
                ++i;
            }
            if (i > j) {
                if (f != b) coincidence(f, b);
                return true;
            }
            // backward
            while (j >= i) {
                std::int64_t nxt = entry(b, inv_col(col(w[static_cast<size_t>(j)])));
                if (nxt < 0) break;
                b = rep_of(nxt);
                --j;
            }
            if (j < i) {
                // both scans met over position i from opposite sides
                if (f != b) coincidence(f, b);
                return true;
            }
            if (j == i) {
                // deduction closes the gap
                int cc = col(w[static_cast<size_t>(i)]);
                set_entry(f, cc, b);
                set_entry(b, inv_col(cc), f);
                return true;
            }
            // gap of length >= 2: define a coset and keep scanning
            if (!within_budget()) return false;
            std::int64_t n = new_coset();
            int cc = col(w[static_cast<size_t>(i)]);
            set_entry(f, cc, n);
            set_entry(n, inv_col(cc), f);
            f = n;
            ++i;
        }
    }

    int gen_count_;
    Budget budget_;
    std::vector<std::vector<std::pair<GenId, int>>> relators_;
    std::vector<std::vector<std::pair<GenId, int>>> subgroup_;
    std::vector<std::vector<std::int64_t>> tab_;
    std::vector<std::int64_t> rep_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

inline CosetTable todd_coxeter(const Presentation& P, const std::vector<Word>& subgroup_gens,
                               const Budget& budget) {
    detail::Enumerator e(P, subgroup_gens, budget);
    CosetTable t = e.run();
    if (t.completed() && !t.verify(P, subgroup_gens))
        throw std::logic_error("coset table failed internal verification");
    return t;
}

}  // namespace knotcert
