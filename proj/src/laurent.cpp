#include "rota/laurent.hpp"

#include <algorithm>

#include "rota/errors.hpp"

namespace rota {

LaurentSeries::LaurentSeries(int precision_order)
    : min_degree_(precision_order + 1), precision_(precision_order) {}

LaurentSeries::LaurentSeries(int min_degree, std::vector<Rational> coeffs, int precision_order)
    : min_degree_(min_degree), coeffs_(std::move(coeffs)), precision_(precision_order) {
    normalize();
    if (!coeffs_.empty() && max_degree() > precision_)
        throw PrecisionExhausted("series carries a term of degree " +
                                 std::to_string(max_degree()) + " beyond order " +
                                 std::to_string(precision_));
}

LaurentSeries LaurentSeries::zero(int precision) { return LaurentSeries(precision); }

LaurentSeries LaurentSeries::one(int precision) {
    return monomial(0, Rational(1), precision);
}

LaurentSeries LaurentSeries::monomial(int degree, const Rational& c, int precision) {
    if (c == 0) return zero(precision);
    return LaurentSeries(degree, {c}, precision);
}

void LaurentSeries::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        min_degree_ = precision_ + 1;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        min_degree_ += static_cast<int>(lead);
    }
}

int LaurentSeries::max_degree() const {
    return min_degree_ + static_cast<int>(coeffs_.size()) - 1;
}

Rational LaurentSeries::coeff(int degree) const {
    const long idx = static_cast<long>(degree) - min_degree_;
    if (idx < 0 || idx >= static_cast<long>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(idx)];
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    const int prec = std::min(precision_, o.precision_);
    if (is_zero() && o.is_zero()) {
        *this = zero(prec);
        return *this;
    }
    const int lo = std::min(is_zero() ? o.min_degree_ : min_degree_,
                            o.is_zero() ? min_degree_ : o.min_degree_);
    const int hi = std::max(is_zero() ? o.max_degree() : max_degree(),
                            o.is_zero() ? max_degree() : o.max_degree());
    std::vector<Rational> sum(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    for (int d = lo; d <= hi; ++d) sum[static_cast<std::size_t>(d - lo)] = coeff(d) + o.coeff(d);
    *this = LaurentSeries(lo, std::move(sum), prec);
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) {
    LaurentSeries neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

LaurentSeries& LaurentSeries::operator*=(const Rational& s) {
    if (s == 0) {
        *this = zero(precision_);
        return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const int prec = std::min(a.precision_, b.precision_);
    if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(prec);
    const int lo = a.min_degree_ + b.min_degree_;
    const int hi = a.max_degree() + b.max_degree();
    if (hi > prec)
        throw PrecisionExhausted("product reaches degree " + std::to_string(hi) +
                                 " beyond order " + std::to_string(prec));
    std::vector<Rational> prod(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return LaurentSeries(lo, std::move(prod), prec);
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.min_degree_ == b.min_degree_ && a.coeffs_ == b.coeffs_;
}

LaurentSeries LaurentSeries::pole_part() const {
    if (is_zero() || min_degree_ >= 0) return zero(precision_);
    const int hi = std::min(max_degree(), -1);
    std::vector<Rational> kept(coeffs_.begin(),
                               coeffs_.begin() + (hi - min_degree_ + 1));
    return LaurentSeries(min_degree_, std::move(kept), precision_);
}

LaurentSeries LaurentSeries::regular_part() const {
    LaurentSeries r = *this;
    return r -= pole_part();
}

FreeVec LaurentSeries::to_vec(const std::string& symbol) const {
    FreeVec v;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v.add(laurent_key(min_degree_ + static_cast<int>(i), symbol), coeffs_[i]);
    return v;
}

LaurentSeries LaurentSeries::from_vec(const FreeVec& v, int precision,
                                      const std::string& symbol) {
    LaurentSeries r = zero(precision);
    for (const auto& [k, c] : v.terms())
        r += monomial(laurent_degree(k, symbol), c, precision);
    return r;
}

std::string LaurentSeries::str(const std::string& symbol) const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += rat_str(coeffs_[i]) + "*" + symbol + "^" +
             std::to_string(min_degree_ + static_cast<int>(i));
    }
    return s;
}

std::string laurent_key(int degree, const std::string& symbol) {
    return symbol + "^" + std::to_string(degree);
}

int laurent_degree(const std::string& key, const std::string& symbol) {
    const std::string prefix = symbol + "^";
    if (key.rfind(prefix, 0) != 0)
        throw UnknownBasisKey(key);
    try {
        return std::stoi(key.substr(prefix.size()));
    } catch (const std::exception&) {
        throw UnknownBasisKey(key);
    }
}

}  // namespace rota
