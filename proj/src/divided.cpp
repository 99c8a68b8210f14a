#include "rota/divided.hpp"

#include "rota/errors.hpp"

namespace rota {

DividedPower DividedPower::monomial(unsigned long k, const Rational& c) {
    DividedPower d;
    d.add(k, c);
    return d;
}

Rational DividedPower::coeff(unsigned long k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void DividedPower::add(unsigned long k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

DividedPower& DividedPower::operator+=(const DividedPower& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, c);
    return *this;
}

DividedPower& DividedPower::operator-=(const DividedPower& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, -c);
    return *this;
}

DividedPower& DividedPower::operator*=(const Rational& s) {
    if (s == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [k, c] : coeffs_) c *= s;
    return *this;
}

DividedPower DividedPower::shifted() const {
    DividedPower r;
    for (const auto& [k, c] : coeffs_) r.add(k + 1, c);
    return r;
}

DividedPower divided_mul(const DividedPower& a, const DividedPower& b) {
    DividedPower r;
    for (const auto& [m, cm] : a.terms())
        for (const auto& [n, cn] : b.terms())
            r.add(m + n, cm * cn * Rational(binomial(m + n, m)));
    return r;
}

FreeVec DividedPower::to_vec() const {
    FreeVec v;
    for (const auto& [k, c] : coeffs_) v.add(divided_key(k), c);
    return v;
}

DividedPower DividedPower::from_vec(const FreeVec& v) {
    DividedPower d;
    for (const auto& [k, c] : v.terms()) d.add(divided_index(k), c);
    return d;
}

std::string DividedPower::str() const { return to_string(to_vec()); }

std::string divided_key(unsigned long k) { return "u" + std::to_string(k); }

unsigned long divided_index(const std::string& key) {
    if (key.size() < 2 || key[0] != 'u') throw UnknownBasisKey(key);
    try {
        return std::stoul(key.substr(1));
    } catch (const std::exception&) {
        throw UnknownBasisKey(key);
    }
}

}  // namespace rota
