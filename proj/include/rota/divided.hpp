#pragma once

#include <map>
#include <string>

#include "rota/free_vector.hpp"
#include "rota/rational.hpp"

namespace rota {

/// Element of the divided power algebra: a finite combination sum c_k u_k
/// with u_m u_n = C(m+n, m) u_{m+n} and shift operator P(u_k) = u_{k+1}.
class DividedPower {
  public:
    DividedPower() = default;

    static DividedPower zero() { return {}; }
    static DividedPower one() { return monomial(0); }
    static DividedPower monomial(unsigned long k, const Rational& c = Rational(1));

    bool is_zero() const { return coeffs_.empty(); }
    const std::map<unsigned long, Rational>& terms() const { return coeffs_; }
    Rational coeff(unsigned long k) const;

    void add(unsigned long k, const Rational& c);

    DividedPower& operator+=(const DividedPower& o);
    DividedPower& operator-=(const DividedPower& o);
    DividedPower& operator*=(const Rational& s);
    friend DividedPower operator+(DividedPower a, const DividedPower& b) { return a += b; }
    friend DividedPower operator-(DividedPower a, const DividedPower& b) { return a -= b; }
    friend bool operator==(const DividedPower& a, const DividedPower& b) {
        return a.coeffs_ == b.coeffs_;
    }

    /// Shift u_k -> u_{k+1}, extended linearly (a weight-zero operator).
    DividedPower shifted() const;

    FreeVec to_vec() const;
    static DividedPower from_vec(const FreeVec& v);

    std::string str() const;

  private:
    std::map<unsigned long, Rational> coeffs_;
};

/// Bilinear extension of u_m u_n = C(m+n, m) u_{m+n}.
DividedPower divided_mul(const DividedPower& a, const DividedPower& b);

std::string divided_key(unsigned long k);
unsigned long divided_index(const std::string& key);

}  // namespace rota
