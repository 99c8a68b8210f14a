#pragma once

#include <map>
#include <string>
#include <vector>

#include "rota/coalgebra.hpp"
#include "rota/rbmodule.hpp"

namespace rota {

/// A linear map from a based coalgebra into a Rota-Baxter algebra, stored by
/// its values on the basis (missing keys read as zero). Characters are
/// audited for multiplicativity on the basis products within the degree
/// window and for sending the unit to the unit.
class ConvMap {
  public:
    ConvMap() = default;
    ConvMap(Coalgebra::Ptr domain, RBAlgebra::Ptr codomain,
            std::map<std::string, FreeVec> values, bool character = false,
            Audit audit = Audit::check);

    /// The convolution unit u(eps(h)).
    static ConvMap unit(Coalgebra::Ptr domain, RBAlgebra::Ptr codomain);

    /// Extends values on single trees multiplicatively to all forests of a
    /// rooted-forest Hopf algebra, yielding a character.
    static ConvMap character_on_trees(Coalgebra::Ptr forests, RBAlgebra::Ptr codomain,
                                      const std::map<std::string, FreeVec>& tree_values);

    const Coalgebra::Ptr& domain() const { return domain_; }
    const RBAlgebra::Ptr& codomain() const { return codomain_; }
    bool is_character() const { return character_; }

    FreeVec value(const std::string& key) const;
    FreeVec apply(const FreeVec& h) const;

    ConvMap& operator+=(const ConvMap& o);
    friend ConvMap operator+(ConvMap a, const ConvMap& b) { return a += b; }
    friend bool operator==(const ConvMap& a, const ConvMap& b);

  private:
    Coalgebra::Ptr domain_;
    RBAlgebra::Ptr codomain_;
    std::map<std::string, FreeVec> values_;
    bool character_ = false;
};

/// Sweedler convolution (f * g)(h) = sum f(h1) g(h2).
ConvMap convolution_mul(const ConvMap& f, const ConvMap& g);

/// Post-composition with the codomain operator: P(f) = Q o f.
ConvMap conv_P(const ConvMap& f);

/// Pre-composition with a coalgebra operator sigma (matrix on the H basis).
ConvMap conv_precompose(const ConvMap& f, const MatrixQ& sigma);

/// Push-forward along an algebra homomorphism: h -> t(f(h)).
ConvMap conv_pushforward(const RBHom& t, const ConvMap& f);

/// The Rota-Baxter law in the convolution algebra with P(f) = Q o f.
bool conv_rb_check(const ConvMap& f, const ConvMap& g);

/// Element of M (x) A (or M (x) V): sparse carrier-key -> coefficient map.
using TensorColumn = std::map<std::string, FreeVec, KeyLess>;

TensorColumn tc_add(const TensorColumn& a, const TensorColumn& b);
TensorColumn tc_scale(const Rational& c, const TensorColumn& a);
bool tc_eq(const TensorColumn& a, const TensorColumn& b);

/// Right-A-linear endomorphism of M (x) A, stored through the images of the
/// generators m (x) 1.
class EndAM {
  public:
    EndAM() = default;
    EndAM(RBAlgebra::Ptr algebra, std::vector<std::string> carrier,
          std::map<std::string, TensorColumn> images);

    static EndAM identity(RBAlgebra::Ptr algebra, std::vector<std::string> carrier);

    const RBAlgebra::Ptr& algebra() const { return algebra_; }
    const std::vector<std::string>& carrier() const { return carrier_; }
    const TensorColumn& image(const std::string& key) const;

    TensorColumn apply(const TensorColumn& x) const;

    EndAM& operator+=(const EndAM& o);
    friend EndAM operator+(EndAM a, const EndAM& b) { return a += b; }
    EndAM scaled(const Rational& c) const;
    friend bool operator==(const EndAM& a, const EndAM& b);

  private:
    RBAlgebra::Ptr algebra_;
    std::vector<std::string> carrier_;
    std::map<std::string, TensorColumn> images_;
};

EndAM compose(const EndAM& g1, const EndAM& g2);

/// phi(f)(m (x) a) = sum m0 (x) f(h1) a.
EndAM phi_map(const Comodule& m, const ConvMap& f);

/// The entrywise operator (1 (x) Q) after evaluation at m (x) 1.
EndAM end_Q(const EndAM& g);

/// Rota-Baxter law for the endomorphism algebra under end_Q.
bool end_rb_check(const EndAM& g1, const EndAM& g2);

/// p = 1 (x) Q on M (x) A.
TensorColumn module_operator_p(const RBAlgebra& a, const TensorColumn& x);

/// The module identity of the pair (M (x) A, 1 (x) Q) over the endomorphism
/// algebra: Q(g) p(x) = p(g p(x)) + p(Q(g) x) + lambda p(g x).
bool end_module_check(const EndAM& g, const TensorColumn& x);

/// Action of Hom(H, A) on M (x) V: f . (m (x) v) = sum m0 (x) f(h1) v.
TensorColumn comodule_tensor_action(const Comodule& m, const RBModule& v, const ConvMap& f,
                                    const TensorColumn& x);

/// Operator 1 (x) p_V on M (x) V.
TensorColumn comodule_tensor_p(const RBModule& v, const TensorColumn& x);

/// Module law of (M (x) V, 1 (x) p_V) over the convolution algebra.
bool comodule_tensor_check(const Comodule& m, const RBModule& v, const ConvMap& f,
                           const TensorColumn& x);

struct CoalgebraCheck {
    bool ok = true;
    std::string witness;  // basis element violating the identity, when !ok
};

/// Dual Rota-Baxter law on a coalgebra operator:
/// (sigma (x) sigma) Delta = (sigma (x) 1 + 1 (x) sigma + lambda) Delta sigma.
CoalgebraCheck rb_coalgebra_check(const Coalgebra& h, const MatrixQ& sigma,
                                  const Rational& lambda);

/// Law of Hom(H, A) under the pre-composition operator P(f) = f o sigma.
bool hom_precompose_rb_check(const ConvMap& f, const ConvMap& g, const MatrixQ& sigma,
                             const Rational& lambda);

/// Comodule-side operator rho against a coalgebra operator sigma:
/// (rho (x) sigma) delta = (rho (x) 1 + 1 (x) sigma + lambda) delta.
CoalgebraCheck rb_comodule_check(const Comodule& m, const MatrixQ& rho, const MatrixQ& sigma,
                                 const Rational& lambda);

/// Module law of (M (x) A, rho (x) 1) over (Hom(H, A), f -> f o sigma) at
/// the weight of the coalgebra operator.
bool rb_comodule_module_check(const Comodule& m, const MatrixQ& rho, const MatrixQ& sigma,
                              const Rational& lambda, const ConvMap& f,
                              const TensorColumn& x);

}  // namespace rota
