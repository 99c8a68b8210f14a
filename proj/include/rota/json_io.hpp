#pragma once

#include <json.hpp>

#include "rota/conv.hpp"
#include "rota/laurent.hpp"
#include "rota/linalg.hpp"
#include "rota/rbalgebra.hpp"
#include "rota/rbmodule.hpp"
#include "rota/urb.hpp"

namespace rota {

/// Insertion-ordered JSON keeps the documented key order in emitted objects.
using json = nlohmann::ordered_json;

json freevec_to_json(const FreeVec& v);
FreeVec freevec_from_json(const json& j);

json tensorvec_to_json(const TensorVec& v);
TensorVec tensorvec_from_json(const json& j);

json linmap_to_json(const LinearMap& f);
LinearMap linmap_from_json(const json& j);

json matrix_to_json(const MatrixQ& m);
MatrixQ matrix_from_json(const json& j);

json laurent_to_json(const LaurentSeries& s);
LaurentSeries laurent_from_json(const json& j);

/// Instance descriptors:
///   {"kind":"laurent","weight":"-1/1","precision":24,"symbol":"t","generator_bound":6}
///   {"kind":"divided","weight":"0/1","index_bound":64,"generator_bound":6}
///   {"kind":"scalar","weight":W,"p":C}    (k, c * Id)
///   {"kind":"scalar-product","weight":W,"p":[C...]}
///   {"kind":"matrix","size":N,"inner":D}
///   {"kind":"product","left":D,"right":D}
json algebra_to_json(const RBAlgebra& r);
RBAlgebra::Ptr algebra_from_json(const json& j, Audit audit = Audit::check);

json module_to_json(const RBModule& m);

json urb_to_json(const URBElement& u);
URBElement urb_from_json(const json& j);

/// Coproduct tables as sparse tensor maps, plus counit, optional grading
/// and optional product table.
json coalgebra_to_json(const Coalgebra& h);
Coalgebra::Ptr coalgebra_from_json(const json& j, Audit audit = Audit::check);

json convmap_to_json(const ConvMap& f);
ConvMap convmap_from_json(const json& j, Coalgebra::Ptr domain, RBAlgebra::Ptr codomain,
                          Audit audit = Audit::check);

/// Wraps nlohmann parse errors into ParseError.
json parse_json(const std::string& text);

}  // namespace rota
