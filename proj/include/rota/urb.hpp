#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rota/rbmodule.hpp"

namespace rota {

/// Element of the ring of Rota-Baxter operators on (R, P), realized as
/// R + (R (x) R) in canonical form: a scalar part in R plus a sorted,
/// zero-pruned combination of pure tensors over monomial keys. The tensor
/// a (x) b stands for the word a Q b, with Q itself the class of 1 (x) 1.
struct URBElement {
    FreeVec scalar;
    TensorVec tensor;

    bool zero() const { return scalar.zero() && tensor.zero(); }

    URBElement& operator+=(const URBElement& o) {
        scalar += o.scalar;
        tensor += o.tensor;
        return *this;
    }
    URBElement& operator-=(const URBElement& o) {
        scalar -= o.scalar;
        tensor -= o.tensor;
        return *this;
    }
    URBElement& operator*=(const Rational& c) {
        scalar *= c;
        tensor *= c;
        return *this;
    }
    friend URBElement operator+(URBElement a, const URBElement& b) { return a += b; }
    friend URBElement operator-(URBElement a, const URBElement& b) { return a -= b; }
    friend bool operator==(const URBElement& a, const URBElement& b) {
        return a.scalar == b.scalar && a.tensor == b.tensor;
    }
};

inline URBElement urb_scalar(FreeVec r) { return {std::move(r), {}}; }
inline URBElement urb_tensor(TensorVec t) { return {{}, std::move(t)}; }
inline URBElement urb_pure(const std::string& a, const std::string& b,
                           const Rational& c = Rational(1)) {
    return urb_tensor(TensorVec::unit({a, b}, c));
}

/// The generator Q = 1 (x) 1 (for an algebra whose unit is the given vector).
URBElement urb_Q(const RBAlgebra& r);

std::string to_string(const URBElement& u);

/// Product on R + (R (x) R):
///   r . s          multiplies in R,
///   r . (a (x) b)  = (r a) (x) b and symmetrically on the right,
///   (a (x) b) . (c (x) d) = a P(b c) (x) d + a (x) tilde(b c) d.
URBElement urb_mul(const RBAlgebra& r, const URBElement& u, const URBElement& v);

/// Defining relation made operational: Q r Q = P(r) Q + Q tilde(r).
bool urb_relation_check(const RBAlgebra& r, const FreeVec& elem);

bool urb_associativity_check(const RBAlgebra& r, const URBElement& u, const URBElement& v,
                             const URBElement& w);

/// d(d+1) for a finite-based algebra, cross-checked against the constructed
/// basis {x_i} plus {x_i (x) x_j}.
long urb_dimension(const RBAlgebra& r);

/// Module action: the scalar part acts through the module, a (x) b acts by
/// x -> a p(b x). Q therefore acts as p.
FreeVec urb_act(const RBAlgebra& r, const RBModule& m, const URBElement& u, const FreeVec& x);

/// The twist r -> r, a (x) b -> b (x) a, an anti-isomorphism onto the ring
/// of operators of the opposite algebra with the adjoint operator.
URBElement urb_opposite_iso(const URBElement& u);

/// The algebra receiving urb_opposite_iso values: (R^o, tilde(P)^o).
RBAlgebra::Ptr urb_opposite_target(RBAlgebra::Ptr r);

/// Projection of the operator ring of a product algebra onto the pair of
/// factor rings; cross tensors map to zero.
std::pair<URBElement, URBElement> urb_product_projection(const RBAlgebra& r1,
                                                         const RBAlgebra& r2,
                                                         const URBElement& u);

struct CoinduceResult {
    RBModule module;
    /// Matrix of x -> class of 1 (x) x from the source carrier into the
    /// coinduced carrier.
    MatrixQ natural_map;
};

/// Left adjoint of the pullback along f, computed as the quotient of
/// U_RB(R') (x) M by the span of u f(a) (x) x - u (x) a x over basis
/// triples, by exact elimination. Both algebras and the carrier must be
/// finite; the Q-action on the quotient is left multiplication by Q.
CoinduceResult coinduce(const RBHom& f, const RBModule& m);

}  // namespace rota
