#pragma once

#include <string>
#include <vector>

#include "rota/free_vector.hpp"
#include "rota/rational.hpp"

namespace rota {

/// Truncated formal Laurent series over the rationals. A value is an exactly
/// known finite sum of terms whose degrees must not exceed precision_order;
/// any operation whose exact result would carry a term above that order
/// raises PrecisionExhausted instead of silently truncating.
///
/// Invariants: the coefficient stored at min_degree is nonzero unless the
/// series is zero, and min_degree <= precision_order + 1 (zero series is
/// normalized to min_degree = precision_order + 1 with no coefficients).
class LaurentSeries {
  public:
    explicit LaurentSeries(int precision_order = kDefaultPrecision);
    LaurentSeries(int min_degree, std::vector<Rational> coeffs, int precision_order);

    static LaurentSeries zero(int precision = kDefaultPrecision);
    static LaurentSeries one(int precision = kDefaultPrecision);
    /// c * t^degree
    static LaurentSeries monomial(int degree, const Rational& c = Rational(1),
                                  int precision = kDefaultPrecision);

    bool is_zero() const { return coeffs_.empty(); }
    int min_degree() const { return min_degree_; }
    int max_degree() const;  // only meaningful when nonzero
    int precision_order() const { return precision_; }
    Rational coeff(int degree) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    LaurentSeries& operator+=(const LaurentSeries& o);
    LaurentSeries& operator-=(const LaurentSeries& o);
    LaurentSeries& operator*=(const Rational& s);

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(const Rational& s, LaurentSeries a) { return a *= s; }

    /// Value equality; the precision tag is metadata and does not participate.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

    /// Projection to the pole part: keeps exactly the terms of degree < 0.
    LaurentSeries pole_part() const;
    /// Complementary projection (terms of degree >= 0).
    LaurentSeries regular_part() const;

    /// Conversion to/from the sparse form over monomial keys "t^i".
    FreeVec to_vec(const std::string& symbol = "t") const;
    static LaurentSeries from_vec(const FreeVec& v, int precision,
                                  const std::string& symbol = "t");

    std::string str(const std::string& symbol = "t") const;

    static constexpr int kDefaultPrecision = 24;

  private:
    void normalize();

    int min_degree_ = kDefaultPrecision + 1;
    std::vector<Rational> coeffs_;  // indexed from min_degree_
    int precision_ = kDefaultPrecision;
};

/// Monomial key "t^i" and its parse; shared by the sparse representation.
std::string laurent_key(int degree, const std::string& symbol = "t");
int laurent_degree(const std::string& key, const std::string& symbol = "t");

}  // namespace rota
