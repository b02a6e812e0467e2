#pragma once

// Named knot catalog (braid words or two-bridge twist parameters) and
// the construction-expression grammar:
//   spec := name | sum(spec, spec, ...) | tspin(spec, n) | spin(spec)
//         | ribbon(n; w1, ..., wn) | twobridge(a1, a2, ...)
// Words in ribbon conjugators use the compact text form (x0.x1^-1).

#include <fstream>
#include <map>

#include <json.hpp>

#include "knotcert/braid.hpp"
#include "knotcert/constructors.hpp"

namespace knotcert {

struct CatalogEntry {
    std::vector<int> braid;
    int strands = 0;
    std::vector<long long> two_bridge;

    bool is_two_bridge() const { return !two_bridge.empty(); }
};

using Catalog = std::map<std::string, CatalogEntry>;

inline const char* default_catalog_json() {
    return R"({
  "unknot": {"braid": [], "strands": 1},
  "3_1":  {"braid": [1, 1, 1], "strands": 2},
  "4_1":  {"braid": [1, -2, 1, -2], "strands": 3},
  "5_1":  {"braid": [1, 1, 1, 1, 1], "strands": 2},
  "5_2":  {"braid": [-1, -1, -1, -2, 1, -2], "strands": 3},
  "6_1":  {"braid": [1, 1, 2, -1, -3, 2, -3], "strands": 4},
  "7_1":  {"braid": [1, 1, 1, 1, 1, 1, 1], "strands": 2},
  "t2_3":  {"braid": [1, 1, 1], "strands": 2},
  "t2_5":  {"braid": [1, 1, 1, 1, 1], "strands": 2},
  "t2_7":  {"braid": [1, 1, 1, 1, 1, 1, 1], "strands": 2},
  "t2_9":  {"braid": [1, 1, 1, 1, 1, 1, 1, 1, 1], "strands": 2},
  "t2_11": {"braid": [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], "strands": 2},
  "t2_13": {"braid": [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], "strands": 2}
})";
}

inline Catalog parse_catalog(const nlohmann::json& j) {
    Catalog cat;
    for (auto it = j.begin(); it != j.end(); ++it) {
        CatalogEntry e;
        const auto& v = it.value();
        if (v.contains("two_bridge")) {
            e.two_bridge = v.at("two_bridge").get<std::vector<long long>>();
        } else {
            e.braid = v.at("braid").get<std::vector<int>>();
            e.strands = v.at("strands").get<int>();
        }
        cat[it.key()] = std::move(e);
    }
    return cat;
}

inline Catalog default_catalog() { return parse_catalog(nlohmann::json::parse(default_catalog_json())); }

inline Catalog load_catalog(const std::string& file) {
    if (file.empty()) return default_catalog();
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open catalog file: " + file);
    return parse_catalog(nlohmann::json::parse(in));
}

inline Presentation presentation_from_entry(const CatalogEntry& e) {
    if (e.is_two_bridge()) return two_bridge(e.two_bridge);
    BraidWord b;
    b.letters = e.braid;
    b.strand_count = e.strands;
    return wirtinger_from_braid(b);
}

// A resolved construction: the presentation plus, when the top level is
// a sum, its summand presentations (for the two-summand lower bound).
struct BuiltKnot {
    Presentation presentation = unknot_presentation();
    std::vector<Presentation> summands;
};

namespace detail {

class SpecParser {
public:
    SpecParser(const std::string& text, const Catalog& catalog)
        : text_(text), catalog_(catalog) {}

    BuiltKnot parse() {
        BuiltKnot out = parse_expr(true);
        skip_ws();
        if (pos_ != text_.size())
            throw std::invalid_argument("trailing characters in knot spec: " + text_);
        return out;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c))
            throw std::invalid_argument(std::string("expected '") + c + "' in knot spec");
    }

    std::string token() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '-' || text_[pos_] == '^' || text_[pos_] == '.'))
            ++pos_;
        if (start == pos_) throw std::invalid_argument("malformed knot spec: " + text_);
        return text_.substr(start, pos_ - start);
    }

    long long integer() {
        std::string t = token();
        size_t used = 0;
        long long v = std::stoll(t, &used);
        if (used != t.size()) throw std::invalid_argument("expected integer, got " + t);
        return v;
    }

    BuiltKnot parse_expr(bool top_level) {
        skip_ws();
        size_t save = pos_;
        std::string head = token();
        skip_ws();
        bool call = pos_ < text_.size() && text_[pos_] == '(';
        if (!call) {
            auto it = catalog_.find(head);
            if (it == catalog_.end())
                throw std::invalid_argument("unknown catalog name: " + head);
            return {presentation_from_entry(it->second), {}};
        }
        expect('(');
        if (head == "sum") {
            std::vector<Presentation> parts;
            parts.push_back(parse_expr(false).presentation);
            while (consume(',')) parts.push_back(parse_expr(false).presentation);
            expect(')');
            Presentation acc = parts[0];
            for (size_t i = 1; i < parts.size(); ++i) acc = connected_sum(acc, parts[i]);
            BuiltKnot out{acc, {}};
            if (top_level) out.summands = parts;
            return out;
        }
        if (head == "tspin") {
            BuiltKnot inner = parse_expr(false);
            expect(',');
            long long n = integer();
            expect(')');
            return {twist_spin(inner.presentation, n), {}};
        }
        if (head == "spin") {
            BuiltKnot inner = parse_expr(false);
            expect(')');
            return {twist_spin(inner.presentation, 0), {}};
        }
        if (head == "ribbon") {
            long long n = integer();
            std::vector<Word> ws;
            if (consume(';')) {
                ws.push_back(Word::parse(token()));
                while (consume(',')) ws.push_back(Word::parse(token()));
            }
            expect(')');
            return {ribbon_presentation(static_cast<int>(n), ws), {}};
        }
        if (head == "twobridge") {
            std::vector<long long> params;
            params.push_back(integer());
            while (consume(',')) params.push_back(integer());
            expect(')');
            return {two_bridge(params), {}};
        }
        pos_ = save;
        throw std::invalid_argument("unknown construction: " + head);
    }

    const std::string& text_;
    const Catalog& catalog_;
    size_t pos_ = 0;
};

}  // namespace detail

inline BuiltKnot build_knot_spec(const std::string& spec, const Catalog& catalog) {
    return detail::SpecParser(spec, catalog).parse();
}

}  // namespace knotcert
