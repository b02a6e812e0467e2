#pragma once

// Integer Laurent polynomials in one variable t, sparse by exponent.
// Canonical text form is ascending in the exponent: "-1+t-t^2".

#include <map>
#include <stdexcept>
#include <string>

#include "knotcert/snf.hpp"

namespace knotcert {

class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long long c) { set(0, BigInt(c)); }
    LaurentPoly(const BigInt& c) { set(0, c); }

    static LaurentPoly monomial(const BigInt& coeff, int exp) {
        LaurentPoly p;
        p.set(exp, coeff);
        return p;
    }

    static LaurentPoly t(int exp = 1) { return monomial(1, exp); }

    bool is_zero() const { return coeffs_.empty(); }

    const std::map<int, BigInt>& coeffs() const { return coeffs_; }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.coeffs_) r.add(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.coeffs_) r.add(e, -c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.set(e, -c);
        return r;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (const auto& [e1, c1] : coeffs_)
            for (const auto& [e2, c2] : o.coeffs_) r.add(e1 + e2, c1 * c2);
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    // Exact evaluation at integer t0 != 0; negative exponents are cleared
    // by a common t^k shift first (units do not change the ideal).
    BigInt eval_unit_normalized(long long t0) const {
        if (coeffs_.empty()) return 0;
        if (t0 != 1 && t0 != -1)
            throw std::invalid_argument("only unit evaluations are exact over Z");
        BigInt acc = 0;
        for (const auto& [e, c] : coeffs_) {
            bool odd = (e % 2) != 0;
            if (t0 == -1 && odd)
                acc -= c;
            else
                acc += c;
        }
        return acc;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : coeffs_) {
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (out.empty())
                out += c < 0 ? "-" : "";
            else
                out += c < 0 ? "-" : "+";
            if (e == 0) {
                out += a.str();
            } else {
                if (a != 1) out += a.str() + "*";
                out += "t";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    static LaurentPoly parse(const std::string& text) {
        LaurentPoly p;
        if (text == "0") return p;
        size_t i = 0;
        while (i < text.size()) {
            int sign = 1;
            if (text[i] == '+') ++i;
            else if (text[i] == '-') { sign = -1; ++i; }
            std::string digits;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                digits += text[i++];
            BigInt coeff = digits.empty() ? BigInt(1) : BigInt(digits);
            int exp = 0;
            if (i < text.size() && (text[i] == 't' || text[i] == '*')) {
                if (text[i] == '*') ++i;
                if (i >= text.size() || text[i] != 't')
                    throw std::invalid_argument("bad polynomial: " + text);
                ++i;
                exp = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    std::string es;
                    if (i < text.size() && text[i] == '-') es += text[i++];
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                        es += text[i++];
                    exp = std::stoi(es);
                }
            } else if (digits.empty()) {
                throw std::invalid_argument("bad polynomial: " + text);
            }
            p.add(exp, sign * coeff);
        }
        return p;
    }

private:
    void set(int e, const BigInt& c) {
        if (c != 0) coeffs_[e] = c;
    }
    void add(int e, const BigInt& c) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            set(e, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::map<int, BigInt> coeffs_;
};

struct LaurentMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<LaurentPoly>> entries;

    LaurentMatrix() = default;
    LaurentMatrix(int r, int c)
        : rows(r), cols(c),
          entries(static_cast<size_t>(r),
                  std::vector<LaurentPoly>(static_cast<size_t>(c))) {}

    const LaurentPoly& at(int i, int j) const {
        return entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    LaurentPoly& at(int i, int j) {
        return entries[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    IntMatrix evaluated(long long t0) const {
        IntMatrix m(static_cast<size_t>(rows), std::vector<BigInt>(static_cast<size_t>(cols)));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                at(i, j).eval_unit_normalized(t0);
        return m;
    }
};

// Determinant of a square Laurent submatrix by cofactor expansion; kept
// for cross-checks against the evaluated integer route.
inline LaurentPoly laurent_det(const LaurentMatrix& m, const std::vector<int>& row_idx,
                               const std::vector<int>& col_idx) {
    size_t n = row_idx.size();
    if (n != col_idx.size()) throw std::invalid_argument("non-square minor");
    if (n == 0) return LaurentPoly(1);
    if (n == 1) return m.at(row_idx[0], col_idx[0]);
    LaurentPoly acc;
    std::vector<int> sub_rows(row_idx.begin() + 1, row_idx.end());
    for (size_t j = 0; j < n; ++j) {
        std::vector<int> sub_cols;
        for (size_t k = 0; k < n; ++k)
            if (k != j) sub_cols.push_back(col_idx[k]);
        LaurentPoly term = m.at(row_idx[0], col_idx[j]) * laurent_det(m, sub_rows, sub_cols);
        if (j % 2 == 0)
            acc = acc + term;
        else
            acc = acc - term;
    }
    return acc;
}

}  // namespace knotcert
