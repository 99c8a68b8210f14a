#include "rota/birkhoff.hpp"

#include <algorithm>

#include "rota/errors.hpp"

namespace rota {

namespace {

std::vector<std::string> keys_by_degree(const Coalgebra& h) {
    std::vector<std::string> keys = h.basis();
    std::stable_sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        return h.degree(a) < h.degree(b);
    });
    return keys;
}

void check_preconditions(const ConvMap& phi) {
    const auto& h = *phi.domain();
    const auto& a = *phi.codomain();
    if (a.weight() != rat(-1))
        throw WrongWeight("factorization needs weight -1, got " + rat_str(a.weight()));
    if (!h.connected_graded()) throw NotConnectedGraded(h.name());
    // idempotency of Q on the generator monomials and on the character values
    for (const auto& g : a.generator_keys()) {
        const FreeVec qg = a.apply_P(FreeVec::unit(g));
        if (!(a.apply_P(qg) == qg)) throw NotIdempotent("Q is not idempotent at " + g);
    }
    for (const auto& key : h.basis()) {
        const FreeVec qv = a.apply_P(phi.value(key));
        if (!(a.apply_P(qv) == qv))
            throw NotIdempotent("Q is not idempotent on the value at " + key);
    }
}

}  // namespace

BirkhoffFactors birkhoff_factorize(const ConvMap& phi) {
    check_preconditions(phi);
    const auto& h = *phi.domain();
    const auto& a = *phi.codomain();

    std::map<std::string, FreeVec> minus, plus;
    minus[h.unit_key()] = a.unit();
    plus[h.unit_key()] = a.unit();

    for (const auto& key : keys_by_degree(h)) {
        if (key == h.unit_key()) continue;
        try {
            // prep = phi(h) + sum over the reduced coproduct of minus * phi
            FreeVec prep = phi.value(key);
            for (const auto& [k, c] : h.reduced_coproduct(key).terms()) {
                FreeVec term = a.mul(minus.at(k.left), phi.value(k.right));
                term *= c;
                prep += term;
            }
            FreeVec neg = a.apply_P(prep);
            neg *= rat(-1);
            FreeVec pos = prep;
            pos += neg;  // (1 - Q) prep
            minus[key] = std::move(neg);
            plus[key] = std::move(pos);
        } catch (const PrecisionExhausted& e) {
            throw PrecisionExhausted(std::string(e.what()) + " (at forest " + key + ")");
        }
    }

    // both parts are characters by the factorization theorem; audited here
    BirkhoffFactors out{ConvMap(phi.domain(), phi.codomain(), std::move(minus), true),
                        ConvMap(phi.domain(), phi.codomain(), std::move(plus), true)};
    return out;
}

bool birkhoff_functorial_check(const RBHom& t, const ConvMap& phi) {
    const BirkhoffFactors factors = birkhoff_factorize(phi);
    const ConvMap pushed = conv_pushforward(t, phi);
    const BirkhoffFactors pushed_factors = birkhoff_factorize(pushed);
    for (const auto& key : phi.domain()->basis()) {
        if (!(t.apply(factors.minus.value(key)) == pushed_factors.minus.value(key)))
            return false;
        if (!(t.apply(factors.plus.value(key)) == pushed_factors.plus.value(key)))
            return false;
    }
    return true;
}

ModuleMap phi_linear_map(const ConvMap& phi, const RBModule& v,
                         const FreeVec& value_at_unit) {
    ModuleMap psi{phi.domain(), {}};
    for (const auto& key : phi.domain()->basis()) {
        FreeVec val = v.act(phi.value(key), value_at_unit);
        if (!val.zero()) psi.values[key] = std::move(val);
    }
    return psi;
}

ModuleMap conv_module_action(const ConvMap& phi, const RBModule& v, const ModuleMap& psi) {
    ModuleMap out{psi.domain, {}};
    for (const auto& key : psi.domain->basis()) {
        FreeVec val;
        for (const auto& [k, c] : psi.domain->coproduct(key).terms()) {
            FreeVec term = v.act(phi.value(k.left), psi.value(k.right));
            term *= c;
            val += term;
        }
        if (!val.zero()) out.values[key] = std::move(val);
    }
    return out;
}

ModuleBirkhoffFactors module_birkhoff(const ConvMap& phi, const RBModule& v,
                                      const ModuleMap& psi) {
    const auto& h = *phi.domain();
    // phi-linearity on sampled basis pairs within the degree window
    for (const auto& a : h.basis())
        for (const auto& b : h.basis()) {
            try {
                const FreeVec prod_arg = h.mul(FreeVec::unit(a), FreeVec::unit(b));
                FreeVec lhs;
                for (const auto& [k, c] : prod_arg.terms()) {
                    FreeVec term = psi.value(k);
                    term *= c;
                    lhs += term;
                }
                const FreeVec rhs = v.act(phi.value(a), psi.value(b));
                if (!(lhs == rhs))
                    throw NotPhiLinear("psi is not phi-linear at (" + a + ", " + b + ")");
            } catch (const DegreeTooLarge&) {
            } catch (const PrecisionExhausted&) {
            }
        }

    const BirkhoffFactors factors = birkhoff_factorize(phi);
    const FreeVec at_unit = psi.value(h.unit_key());

    ModuleBirkhoffFactors out{{phi.domain(), {}}, {phi.domain(), {}}};
    for (const auto& key : h.basis()) {
        FreeVec m = v.act(factors.minus.value(key), at_unit);
        FreeVec p = v.act(factors.plus.value(key), at_unit);
        if (!m.zero()) out.minus.values[key] = std::move(m);
        if (!p.zero()) out.plus.values[key] = std::move(p);
    }
    return out;
}

}  // namespace rota
