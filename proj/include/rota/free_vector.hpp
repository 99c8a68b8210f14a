#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rota/rational.hpp"

namespace rota {

/// Documented total order on basis keys: keys are split into alternating
/// text and signed-integer chunks and compared chunkwise, numbers by value.
/// So "t^-2" < "t^-1" < "t^0" < "t^2" < "t^10" and "u2" < "u10".
/// At equal positions a text chunk sorts before a number chunk.
int key_compare(const std::string& a, const std::string& b);

struct KeyLess {
    bool operator()(const std::string& a, const std::string& b) const {
        return key_compare(a, b) < 0;
    }
};

/// A pure tensor position (left, right), ordered lexicographically by
/// (left, right) under the key order above. Prints as "(left|right)".
struct TensorKey {
    std::string left;
    std::string right;

    friend bool operator==(const TensorKey& a, const TensorKey& b) {
        return a.left == b.left && a.right == b.right;
    }
};

struct TensorKeyLess {
    bool operator()(const TensorKey& a, const TensorKey& b) const {
        const int c = key_compare(a.left, b.left);
        if (c != 0) return c < 0;
        return key_compare(a.right, b.right) < 0;
    }
};

std::string tensor_key_str(const TensorKey& k);
TensorKey tensor_key_parse(const std::string& text);

namespace detail {
template <class Key>
struct LessOf;
template <>
struct LessOf<std::string> {
    using type = KeyLess;
};
template <>
struct LessOf<TensorKey> {
    using type = TensorKeyLess;
};
}  // namespace detail

/// Sparse vector of a free module: finite map basis key -> nonzero rational.
/// Zero coefficients are never stored, so structural equality is value
/// equality and printing is canonical.
template <class Key>
class SparseVec {
  public:
    using Less = typename detail::LessOf<Key>::type;
    using Map = std::map<Key, Rational, Less>;

    SparseVec() = default;
    SparseVec(std::initializer_list<std::pair<Key, Rational>> items) {
        for (const auto& [k, c] : items) add(k, c);
    }

    static SparseVec unit(const Key& k, const Rational& c = Rational(1)) {
        SparseVec v;
        v.add(k, c);
        return v;
    }

    bool zero() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }
    const Map& terms() const& { return coeffs_; }
    // materialize when called on a temporary so range-for stays valid
    Map terms() && { return std::move(coeffs_); }

    Rational coeff(const Key& k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    /// Adds c to the coefficient at k, pruning if the sum vanishes.
    void add(const Key& k, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    SparseVec& operator+=(const SparseVec& o) {
        for (const auto& [k, c] : o.coeffs_) add(k, c);
        return *this;
    }
    SparseVec& operator-=(const SparseVec& o) {
        for (const auto& [k, c] : o.coeffs_) add(k, -c);
        return *this;
    }
    SparseVec& operator*=(const Rational& s) {
        if (s == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [k, c] : coeffs_) c *= s;
        return *this;
    }

    friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
    friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
    friend SparseVec operator*(const Rational& s, SparseVec v) { return v *= s; }
    friend SparseVec operator-(SparseVec v) { return v *= Rational(-1); }

    friend bool operator==(const SparseVec& a, const SparseVec& b) {
        return a.coeffs_ == b.coeffs_;
    }

  private:
    Map coeffs_;
};

using FreeVec = SparseVec<std::string>;
using TensorVec = SparseVec<TensorKey>;

/// alpha*v + beta*w with zeros pruned.
inline FreeVec vec_combine(const Rational& alpha, const FreeVec& v,
                           const Rational& beta, const FreeVec& w) {
    FreeVec r;
    for (const auto& [k, c] : v.terms()) r.add(k, alpha * c);
    for (const auto& [k, c] : w.terms()) r.add(k, beta * c);
    return r;
}

/// Bilinear expansion of v (x) w: coefficient of (b1, b2) is v[b1]*w[b2].
inline TensorVec tensor_expand(const FreeVec& v, const FreeVec& w) {
    TensorVec r;
    for (const auto& [kv, cv] : v.terms())
        for (const auto& [kw, cw] : w.terms()) r.add({kv, kw}, cv * cw);
    return r;
}

std::string to_string(const FreeVec& v);
std::string to_string(const TensorVec& v);

inline int key_compare(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    const auto digit_at = [](const std::string& s, std::size_t p) {
        return p < s.size() && s[p] >= '0' && s[p] <= '9';
    };
    // A '-' starts a number chunk only when a digit follows.
    const auto number_at = [&](const std::string& s, std::size_t p) {
        return digit_at(s, p) || (p < s.size() && s[p] == '-' && digit_at(s, p + 1));
    };
    const auto read_number = [&](const std::string& s, std::size_t& p) {
        long long sign = 1, val = 0;
        if (s[p] == '-') {
            sign = -1;
            ++p;
        }
        while (digit_at(s, p)) val = val * 10 + (s[p++] - '0');
        return sign * val;
    };
    while (i < a.size() && j < b.size()) {
        const bool na = number_at(a, i), nb = number_at(b, j);
        if (na && nb) {
            const long long va = read_number(a, i), vb = read_number(b, j);
            if (va != vb) return va < vb ? -1 : 1;
        } else if (!na && !nb) {
            if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
            ++i, ++j;
        } else {
            return na ? 1 : -1;  // text chunks sort before numbers
        }
    }
    if (i == a.size() && j == b.size()) {
        // chunkwise ties ("x1" vs "x01") fall back to the raw spelling so
        // distinct keys never collapse to one map entry
        return a.compare(b) == 0 ? 0 : (a < b ? -1 : 1);
    }
    return i == a.size() ? -1 : 1;
}

inline std::string tensor_key_str(const TensorKey& k) {
    return "(" + k.left + "|" + k.right + ")";
}

inline TensorKey tensor_key_parse(const std::string& text) {
    if (text.size() < 3 || text.front() != '(' || text.back() != ')')
        throw ParseError("bad tensor key '" + text + "'");
    const auto bar = text.find('|');
    if (bar == std::string::npos) throw ParseError("bad tensor key '" + text + "'");
    return {text.substr(1, bar - 1), text.substr(bar + 1, text.size() - bar - 2)};
}

inline std::string to_string(const FreeVec& v) {
    if (v.zero()) return "0";
    std::string s;
    for (const auto& [k, c] : v.terms()) {
        if (!s.empty()) s += " + ";
        s += rat_str(c) + "*" + k;
    }
    return s;
}

inline std::string to_string(const TensorVec& v) {
    if (v.zero()) return "0";
    std::string s;
    for (const auto& [k, c] : v.terms()) {
        if (!s.empty()) s += " + ";
        s += rat_str(c) + "*" + tensor_key_str(k);
    }
    return s;
}

}  // namespace rota
