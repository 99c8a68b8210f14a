#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>

#include "rota/errors.hpp"

namespace rota {

/// Exact rational scalar. Always kept canonical: gcd(|num|, den) = 1, den > 0.
/// GMP maintains canonical form under arithmetic; only raw (num, den)
/// construction needs an explicit canonicalize, which rat() below performs.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "num/den" or a bare integer. Throws ParseError on malformed input.
Rational rat_parse(const std::string& text);

/// Canonical rendering "num/den", denominator always written ("3" -> "3/1").
std::string rat_str(const Rational& q);

/// Binomial coefficient C(n, k), exact.
Integer binomial(unsigned long n, unsigned long k);

/// Multinomial coefficient (a+b+c)! / (a! b! c!), exact.
Integer multinomial3(unsigned long a, unsigned long b, unsigned long c);

inline Rational rat_parse(const std::string& text) try {
    const auto slash = text.find('/');
    Rational q;
    if (slash == std::string::npos) {
        q = Rational(Integer(text));
    } else {
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        q = Rational(num, den);
    }
    q.canonicalize();
    return q;
} catch (const ParseError&) {
    throw;
} catch (const std::exception&) {
    throw ParseError("bad rational '" + text + "'");
}

inline std::string rat_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer multinomial3(unsigned long a, unsigned long b, unsigned long c) {
    return binomial(a + b + c, a) * binomial(b + c, b);
}

}  // namespace rota

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

}  // namespace Eigen

namespace rota {

using MatrixQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline bool exact_eq(const MatrixQ& a, const MatrixQ& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

inline bool is_zero(const MatrixQ& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

}  // namespace rota
