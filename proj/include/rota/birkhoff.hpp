#pragma once

#include "rota/conv.hpp"

namespace rota {

struct BirkhoffFactors {
    ConvMap minus;  // counterterm, unit plus pole-valued off the unit
    ConvMap plus;   // renormalized part, minus * phi
};

/// Factorization of a character phi on a connected graded Hopf algebra into
/// (A, Q) with idempotent Q and weight -1. Proceeds by degree through
///   prep(h)  = phi(h) + sum phi_minus(h') phi(h'')   over Delta'(h),
///   minus(h) = -Q(prep(h)),
///   plus(h)  = (1 - Q)(prep(h)),
/// so that plus = minus * phi exactly on every basis element.
/// Throws WrongWeight, NotIdempotent or NotConnectedGraded when the
/// preconditions fail.
BirkhoffFactors birkhoff_factorize(const ConvMap& phi);

/// Push-forward commutes with factorization: t(phi_-) = (t phi)_- and the
/// same for the plus part, checked on every basis element.
bool birkhoff_functorial_check(const RBHom& t, const ConvMap& phi);

/// A linear map from the coalgebra into a module carrier.
struct ModuleMap {
    Coalgebra::Ptr domain;
    std::map<std::string, FreeVec> values;

    FreeVec value(const std::string& key) const {
        const auto it = values.find(key);
        return it == values.end() ? FreeVec() : it->second;
    }
};

/// The phi-linear map determined by a single value at the unit.
ModuleMap phi_linear_map(const ConvMap& phi, const RBModule& v, const FreeVec& value_at_unit);

/// Convolution action (phi * psi)(h) = sum phi(h1) psi(h2), values in V.
ModuleMap conv_module_action(const ConvMap& phi, const RBModule& v, const ModuleMap& psi);

struct ModuleBirkhoffFactors {
    ModuleMap minus;  // h -> phi_-(h) psi(1)
    ModuleMap plus;   // h -> phi_+(h) psi(1), equal to phi_- * psi
};

/// Module-level factorization: psi must be phi-linear (checked on sampled
/// basis pairs, NotPhiLinear otherwise); the parts are phi_+-(h) acting on
/// psi(1), and plus = phi_- * psi holds exactly.
ModuleBirkhoffFactors module_birkhoff(const ConvMap& phi, const RBModule& v,
                                      const ModuleMap& psi);

}  // namespace rota
