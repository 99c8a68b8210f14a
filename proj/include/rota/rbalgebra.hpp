#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rota/divided.hpp"
#include "rota/free_vector.hpp"
#include "rota/laurent.hpp"
#include "rota/linalg.hpp"

namespace rota {

enum class Audit { check, defer };

/// A Rota-Baxter algebra of weight lambda: an associative unital algebra with
/// a linear operator P satisfying P(x)P(y) = P(xP(y)) + P(P(x)y) + lambda P(xy).
///
/// Elements are sparse rational combinations of monomial keys; the instance
/// kind fixes the key grammar:
///   finite        declared basis keys with explicit tables
///   laurent       "t^i" with the pole-part projection, budgeted degree
///   divided       "uk" with u_m u_n = C(m+n,m) u_{m+n} and the shift operator
///   matrix        "Ei,j:<inner key>", entrywise operator over an inner algebra
///   product       "1:<key>" / "2:<key>", componentwise structure
/// plus derived views: tilde (operator -lambda*Id - P), opposite (reversed
/// multiplication), scaled (operator alpha*P at weight alpha*lambda).
///
/// Instances are immutable and freely shareable; all operations are pure.
class RBAlgebra : public std::enable_shared_from_this<RBAlgebra> {
  public:
    using Ptr = std::shared_ptr<const RBAlgebra>;
    using MultTable = std::map<std::pair<std::string, std::string>, FreeVec>;

    enum class Kind {
        finite,
        laurent,
        divided,
        matrix,
        product,
        tilde,
        opposite,
        scaled,
        override_op
    };

    /// Replacement operators carried by the override view.
    enum class OpOverride { zero, identity, neg_weight };

    static Ptr finite(std::string name, Rational weight, std::vector<std::string> basis,
                      MultTable mult, FreeVec unit, MatrixQ op, bool commutative,
                      Audit audit = Audit::check);

    /// k^n with componentwise multiplication and P = diag(p_scalars).
    static Ptr scalar_product(std::string name, Rational weight,
                              std::vector<Rational> p_scalars, Audit audit = Audit::check);

    /// (k, c * Id) on one generator "1".
    static Ptr scalar(std::string name, Rational weight, Rational p_scalar,
                      Audit audit = Audit::check);

    /// Laurent polynomials within degree <= precision, pole-part operator.
    /// The Rota-Baxter law holds at weight -1; other weights are accepted
    /// only with a deferred audit (they fail the law and are used to
    /// exercise the failure-reporting path).
    static Ptr laurent(int precision = LaurentSeries::kDefaultPrecision,
                       Rational weight = Rational(-1), std::string symbol = "t",
                       int generator_bound = 6, Audit audit = Audit::check);

    /// Divided powers with the shift operator, weight 0.
    static Ptr divided(unsigned long index_bound = 64, unsigned long generator_bound = 6,
                       Audit audit = Audit::check);

    /// n x n matrices over a commutative inner Rota-Baxter algebra,
    /// entrywise operator.
    static Ptr matrix_over(Ptr inner, int n, Audit audit = Audit::check);

    /// Componentwise product of two algebras of equal weight.
    static Ptr product(Ptr left, Ptr right, Audit audit = Audit::check);

    static Ptr tilde(Ptr base);
    static Ptr opposite(Ptr base);
    static Ptr scaled(Ptr base, Rational alpha);

    /// Same multiplication as the base, operator replaced: P = 0 (any
    /// weight), P = Id (weight -1) or P = -weight * Id.
    static Ptr zero_operator(Ptr base, Rational weight);
    static Ptr identity_operator(Ptr base);
    static Ptr neg_weight_operator(Ptr base, Rational weight);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const Rational& weight() const { return weight_; }
    bool commutative() const { return commutative_; }
    bool finite_based() const;

    /// Ordered basis of a finite-based instance; throws NotFiniteBased.
    std::vector<std::string> basis() const;

    FreeVec unit() const;
    FreeVec mul(const FreeVec& a, const FreeVec& b) const;
    FreeVec apply_P(const FreeVec& x) const;
    /// The adjoint operator -lambda*Id - P (same weight).
    FreeVec apply_tilde(const FreeVec& x) const;

    /// Documented generator keys used by sampled law audits: full basis for
    /// finite instances, t^i (|i| <= bound) for Laurent, u_k (k <= bound)
    /// for divided powers, matrix units and tagged generators elsewhere.
    std::vector<std::string> generator_keys() const;

    /// Operator of the identity-scaled instance P(1); present when it is a
    /// scalar multiple of the unit.
    std::optional<Rational> p_of_unit_scalar() const;

    // Kind-specific accessors used by serialization and tests.
    int laurent_precision() const;
    const std::string& laurent_symbol() const;
    Ptr inner() const;   // matrix kind
    int matrix_size() const;
    Ptr left() const;    // product kind
    Ptr right() const;
    Ptr base() const;    // view kinds
    const Rational& scale_factor() const;

  private:
    RBAlgebra() = default;

    FreeVec mul_keys(const std::string& a, const std::string& b) const;
    FreeVec apply_P_key(const std::string& k) const;
    void audit_laws() const;

    Kind kind_ = Kind::finite;
    std::string name_;
    Rational weight_;
    bool commutative_ = false;

    // finite
    std::vector<std::string> basis_;
    MultTable mult_;
    FreeVec unit_;
    MatrixQ op_;
    std::map<std::string, Eigen::Index> basis_index_;

    // laurent
    int precision_ = 0;
    std::string symbol_;
    int gen_bound_ = 0;

    // divided
    unsigned long index_bound_ = 0;
    unsigned long dgen_bound_ = 0;

    // matrix / product / views
    Ptr inner_;
    int size_ = 0;
    Ptr left_, right_;
    Ptr base_;
    Rational alpha_;
    OpOverride override_ = OpOverride::zero;
};

/// Exact test of the Rota-Baxter law P(x)P(y) = P(xP(y)) + P(P(x)y) + lambda P(xy).
bool rb_check(const RBAlgebra& R, const FreeVec& x, const FreeVec& y);

/// Double product x*y = xP(y) + P(x)y + lambda xy (associative, nonunitary).
FreeVec star_product(const RBAlgebra& R, const FreeVec& x, const FreeVec& y);

inline RBAlgebra::Ptr tilde_P(RBAlgebra::Ptr R) { return RBAlgebra::tilde(std::move(R)); }

/// True iff P(P(x)) + lambda P(x) = 0 for every sample.
bool quasi_idempotent_check(const RBAlgebra& R, const std::vector<FreeVec>& samples);

/// P(1)-invariance criterion for quasi-idempotency of the regular module:
/// P(u P(1)) = P(u) P(1).
bool right_p1_invariance_check(const RBAlgebra& R, const FreeVec& u);

struct SplitResult {
    MatrixQ minus_lambda;  // rows: echelon basis of ker(p + lambda)
    MatrixQ zero;          // rows: echelon basis of ker(p)
};

/// Eigenspace splitting of a quasi-idempotent operator at invertible weight.
/// Throws ZeroWeight when lambda = 0 and NotQuasiIdempotent when
/// p^2 + lambda p != 0.
SplitResult regular_singular_split(const MatrixQ& p, const Rational& lambda);
SplitResult regular_singular_split(const LinearMap& p, const Rational& lambda);

/// Rebuilds -lambda * (projection onto the first factor along the second).
MatrixQ split_reconstruct(const SplitResult& split, const Rational& lambda);

/// Rectangular matrix over an inner algebra, entries as sparse elements.
class MatrixOverA {
  public:
    MatrixOverA(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FreeVec& at(int i, int j) { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
    const FreeVec& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i * cols_ + j)];
    }

    friend bool operator==(const MatrixOverA& a, const MatrixOverA& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

  private:
    int rows_, cols_;
    std::vector<FreeVec> entries_;
};

MatrixOverA mat_mul(const RBAlgebra& A, const MatrixOverA& x, const MatrixOverA& y);
MatrixOverA mat_add(const MatrixOverA& x, const MatrixOverA& y);
MatrixOverA mat_scale(const Rational& c, const MatrixOverA& x);
MatrixOverA mat_Q(const RBAlgebra& A, const MatrixOverA& x);

/// Rectangular law Q(X)Q(Y) = Q(Q(X)Y + XQ(Y) + lambda XY) over a
/// commutative inner algebra. Throws DimensionMismatch when the shapes do
/// not compose.
bool matrix_rb_product_check(const RBAlgebra& A, const MatrixOverA& x, const MatrixOverA& y);

inline RBAlgebra::Ptr product_rba(RBAlgebra::Ptr r1, RBAlgebra::Ptr r2) {
    return RBAlgebra::product(std::move(r1), std::move(r2));
}

/// Additive Atkinson pair (P(r), tilde(r)); the components sum to -lambda*r.
std::pair<FreeVec, FreeVec> atkinson_pair(const RBAlgebra& R, const FreeVec& r);

/// A homomorphism of Rota-Baxter algebras of equal weight: unital,
/// multiplicative and operator-commuting, audited on generator samples.
class RBHom {
  public:
    RBHom(RBAlgebra::Ptr source, RBAlgebra::Ptr target,
          std::function<FreeVec(const FreeVec&)> fn, Audit audit = Audit::check);

    static RBHom identity(RBAlgebra::Ptr R);
    /// Re-tags Laurent values into a smaller degree budget; total on the
    /// representable range, raises PrecisionExhausted beyond it.
    static RBHom laurent_truncation(RBAlgebra::Ptr source, RBAlgebra::Ptr target);

    const RBAlgebra::Ptr& source() const { return source_; }
    const RBAlgebra::Ptr& target() const { return target_; }
    FreeVec apply(const FreeVec& x) const { return fn_(x); }

  private:
    RBAlgebra::Ptr source_, target_;
    std::function<FreeVec(const FreeVec&)> fn_;
};

}  // namespace rota
