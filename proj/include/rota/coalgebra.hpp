#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rota/free_vector.hpp"
#include "rota/rbalgebra.hpp"

namespace rota {

/// A coassociative counital coalgebra on an ordered basis, optionally graded
/// and optionally carrying a compatible product (bialgebra). Construction
/// verifies coassociativity and the counit laws on every basis element, and
/// the grading/product compatibilities when present.
class Coalgebra {
  public:
    using Ptr = std::shared_ptr<const Coalgebra>;
    using MultTable = std::map<std::pair<std::string, std::string>, FreeVec>;

    static Ptr make(std::string name, std::vector<std::string> basis,
                    std::map<std::string, TensorVec> coproduct,
                    std::map<std::string, Rational> counit,
                    std::optional<std::map<std::string, int>> grading = std::nullopt,
                    std::optional<MultTable> product = std::nullopt,
                    std::string unit_key = "", Audit audit = Audit::check);

    /// M_n(k) with Delta(E_ij) = sum_l E_il (x) E_lj, eps(E_ij) = [i = j].
    static Ptr matrix(int n);

    /// Quotient of the matrix coalgebra by the coideal of strictly lower
    /// entries: basis E_ij with i <= j.
    static Ptr upper_triangular(int n);

    /// One group-like element g: Delta(g) = g (x) g, eps(g) = 1.
    static Ptr group_like();

    /// Connected graded Hopf algebra of rooted forests up to the given
    /// number of vertices: product is disjoint union, coproduct follows
    /// the branch recursion Delta(B+(F)) = B+(F) (x) 1 + (id (x) B+) Delta(F).
    /// Throws DegreeTooLarge beyond 5 vertices.
    static Ptr rooted_trees(int max_degree);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& basis() const { return basis_; }
    const TensorVec& coproduct(const std::string& key) const;
    Rational counit(const std::string& key) const;

    TensorVec coproduct_of(const FreeVec& v) const;
    Rational counit_of(const FreeVec& v) const;

    bool graded() const { return grading_.has_value(); }
    int degree(const std::string& key) const;

    bool has_product() const { return product_.has_value(); }
    const std::string& unit_key() const { return unit_key_; }
    FreeVec unit() const { return FreeVec::unit(unit_key_); }
    FreeVec mul(const FreeVec& a, const FreeVec& b) const;

    /// Graded with product, degree-0 spanned by the unit alone.
    bool connected_graded() const { return connected_graded_; }

    /// Delta(h) - h (x) 1 - 1 (x) h for a basis key of positive degree.
    TensorVec reduced_coproduct(const std::string& key) const;

  private:
    Coalgebra() = default;
    void verify() const;

    std::string name_;
    std::vector<std::string> basis_;
    std::map<std::string, TensorVec> coproduct_;
    std::map<std::string, Rational> counit_;
    std::optional<std::map<std::string, int>> grading_;
    std::optional<MultTable> product_;
    std::string unit_key_;
    bool connected_graded_ = false;
};

/// Right comodule over a coalgebra: coaction delta(m) = sum m0 (x) h1 with
/// (delta (x) 1) delta = (1 (x) Delta) delta, checked on construction.
class Comodule {
  public:
    static Comodule make(Coalgebra::Ptr coalgebra, std::vector<std::string> carrier,
                         std::map<std::string, TensorVec> coaction,
                         Audit audit = Audit::check);

    /// k^n over the matrix coalgebra: delta(E_i) = sum_l E_l (x) E_li.
    static Comodule standard(int n);

    /// k^n over the upper-triangular quotient: delta(E_i) = sum_{l<=i}.
    static Comodule standard_triangular(int n);

    const Coalgebra::Ptr& coalgebra() const { return coalgebra_; }
    const std::vector<std::string>& carrier() const { return carrier_; }
    const TensorVec& coaction(const std::string& key) const;

  private:
    Comodule() = default;

    Coalgebra::Ptr coalgebra_;
    std::vector<std::string> carrier_;
    std::map<std::string, TensorVec> coaction_;
};

/// Splits a forest key into its tree encodings ("1" is the empty forest).
std::vector<std::string> forest_trees(const std::string& key);
/// Canonical forest key of a multiset of tree encodings.
std::string forest_key(std::vector<std::string> trees);
/// Number of vertices.
int forest_degree(const std::string& key);

}  // namespace rota
