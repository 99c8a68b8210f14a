#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rota/rbalgebra.hpp"

namespace rota {

/// A Rota-Baxter module over (R, P): an R-module M with a linear operator p
/// satisfying P(a)p(x) = p(a p(x)) + p(P(a) x) + lambda p(a x).
///
/// Finite-dimensional carriers store one action matrix per algebra basis key
/// plus the operator matrix; the regular module (M = R, p = P) is kept
/// symbolic so that infinite-dimensional instances work through the
/// algebra's own operations.
class RBModule {
  public:
    /// Matrix-backed module over a finite-based algebra. The constructor
    /// audits unitality, associativity on basis pairs and the module law on
    /// every (generator, carrier basis) pair, recording the checked pairs.
    static RBModule matrix_module(RBAlgebra::Ptr algebra, std::vector<std::string> carrier,
                                  std::map<std::string, MatrixQ> action, MatrixQ p,
                                  Audit audit = Audit::check);

    /// R as a module over itself with p = P.
    static RBModule regular(RBAlgebra::Ptr algebra);

    /// The regular module of a finite-based algebra, materialized as
    /// left-multiplication matrices.
    static RBModule regular_materialized(RBAlgebra::Ptr algebra);

    bool is_regular() const { return regular_; }
    const RBAlgebra::Ptr& algebra() const { return algebra_; }

    Eigen::Index dim() const;
    const std::vector<std::string>& carrier() const;
    const MatrixQ& p_matrix() const;
    const MatrixQ& action_matrix(const std::string& basis_key) const;
    const std::vector<std::pair<std::string, std::string>>& certificate() const {
        return certificate_;
    }

    /// Action of an algebra element on a carrier element.
    FreeVec act(const FreeVec& r, const FreeVec& x) const;
    FreeVec apply_p(const FreeVec& x) const;
    /// -lambda * x - p(x).
    FreeVec apply_p_tilde(const FreeVec& x) const;

    /// Matrix of the action of an algebra element (matrix-backed only).
    MatrixQ action_of(const FreeVec& r) const;

    VectorQ to_coords(const FreeVec& x) const;
    FreeVec from_coords(const VectorQ& coords) const;

  private:
    RBModule() = default;

    RBAlgebra::Ptr algebra_;
    bool regular_ = false;
    std::vector<std::string> carrier_;
    std::map<std::string, MatrixQ> action_;
    MatrixQ p_;
    std::map<std::string, Eigen::Index> index_;
    std::vector<std::pair<std::string, std::string>> certificate_;
};

/// Exact test of P(a)p(x) = p(a p(x)) + p(P(a) x) + lambda p(a x).
bool rbm_check(const RBModule& m, const FreeVec& a, const FreeVec& x);

struct ModuleSplitResult {
    MatrixQ minus_lambda;  // rows: echelon basis of the eigenspace at -lambda
    MatrixQ zero;          // rows: echelon basis of ker p
    bool stable = true;    // eigenspace stability under the split algebra action
    std::string report;    // names the failing containment when !stable
};

/// Regular-singular decomposition of a quasi-idempotent module; verifies
/// that P(R) preserves the -lambda eigenspace and ker P preserves ker p.
ModuleSplitResult module_split(const RBModule& m);

/// r * x = P(r) x + r p(x) + lambda r x.
FreeVec derived_action(const RBModule& m, const FreeVec& r, const FreeVec& x);

/// (M, -lambda - p) as a module over the tilde algebra.
RBModule dual_module(const RBModule& m);

/// (M, alpha p) over (R, alpha P) at weight alpha * lambda.
RBModule scale_module(const RBModule& m, const Rational& alpha);

/// Additive Atkinson pair (p(x), tilde_p(x)).
std::pair<FreeVec, FreeVec> atkinson_module_pair(const RBModule& m, const FreeVec& x);

/// Closure of the Atkinson image under the twisted action, witnessed through
/// the derived action: p(r*x) = P(r)p(x) and tilde_p(r*x) = -tilde_P(r)tilde_p(x).
bool atkinson_closure_check(const RBModule& m, const FreeVec& r, const FreeVec& x);

/// Carrier of left and right Rota-Baxter structures sharing one operator.
struct BimoduleWitness {
    RBAlgebra::Ptr left;   // weight lambda
    RBAlgebra::Ptr right;  // weight mu
    std::vector<std::string> carrier;
    std::map<std::string, MatrixQ> left_action;
    std::map<std::string, MatrixQ> right_action;
    MatrixQ p;

    FreeVec act_left(const FreeVec& r, const FreeVec& x) const;
    FreeVec act_right(const FreeVec& x, const FreeVec& s) const;
    FreeVec apply_p(const FreeVec& x) const;
    VectorQ to_coords(const FreeVec& x) const;
    FreeVec from_coords(const VectorQ& coords) const;
};

struct BimoduleCheckResult {
    bool left_identity = false;
    bool right_identity = false;
    bool lemma = false;  // (lambda - mu) p(r p(m) s) = 0
    bool ok() const { return left_identity && right_identity && lemma; }
};

BimoduleCheckResult strict_bimodule_check(const BimoduleWitness& b, const FreeVec& r,
                                          const FreeVec& m, const FreeVec& s);

struct ProductModuleResult {
    /// The cross conditions (a)/(b) over all (generator, basis) pairs.
    bool conditions_ok = false;
    /// Whether the assembled operator satisfies the module law. The cross
    /// conditions alone do not force this: taking the identity at
    /// (a, x) in R_i x M_i additionally requires p_ji to kill the image of
    /// the derived action r_i * m_i, so law_ok can be false with
    /// conditions_ok true.
    bool law_ok = false;
    std::string report;
    std::optional<RBModule> module;  // assembled over the product algebra when law_ok
    bool ok() const { return conditions_ok && law_ok; }
};

/// Cross conditions for a module over a product algebra:
///   (a) p_ji(r_i p_ij(m_j)) = 0
///   (b) p_i(r_i p_ij(m_j)) = P_i(r_i) p_ij(m_j)
/// When both hold on all (generator, basis) pairs, assembles the candidate
/// module over product_rba(R1, R2) with p = (p1 + p21, p12 + p2) and
/// confirms the module law on it.
ProductModuleResult product_module_conditions(const RBModule& m1, const RBModule& m2,
                                              const MatrixQ& p12, const MatrixQ& p21);

/// f is a module homomorphism iff it is R-linear and f p_M = p_N f.
bool is_module_hom(const RBModule& m, const RBModule& n, const MatrixQ& f);

/// Dimension of the space of module homomorphisms M -> N.
Eigen::Index hom_space_dim(const RBModule& m, const RBModule& n);

}  // namespace rota
