#include "rota/conv.hpp"

#include <algorithm>

#include "rota/errors.hpp"

namespace rota {

ConvMap::ConvMap(Coalgebra::Ptr domain, RBAlgebra::Ptr codomain,
                 std::map<std::string, FreeVec> values, bool character, Audit audit)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), values_(std::move(values)),
      character_(character) {
    if (audit == Audit::defer || !character_) return;
    if (!domain_->has_product())
        throw AxiomViolation("characters need a bialgebra domain");
    if (!(value(domain_->unit_key()) == codomain_->unit()))
        throw AxiomViolation("character does not send 1 to 1");
    for (const auto& a : domain_->basis())
        for (const auto& b : domain_->basis()) {
            try {
                const FreeVec lhs = apply(domain_->mul(FreeVec::unit(a), FreeVec::unit(b)));
                const FreeVec rhs = codomain_->mul(value(a), value(b));
                if (!(lhs == rhs))
                    throw AxiomViolation("character not multiplicative at (" + a + ", " + b +
                                         ")");
            } catch (const DegreeTooLarge&) {
                // products outside the degree window are not sampled
            } catch (const PrecisionExhausted&) {
            }
        }
}

ConvMap ConvMap::unit(Coalgebra::Ptr domain, RBAlgebra::Ptr codomain) {
    std::map<std::string, FreeVec> values;
    for (const auto& h : domain->basis()) {
        FreeVec v = codomain->unit();
        v *= domain->counit(h);
        if (!v.zero()) values[h] = std::move(v);
    }
    const bool character = domain->has_product();
    return ConvMap(std::move(domain), std::move(codomain), std::move(values), character,
                   Audit::defer);
}

ConvMap ConvMap::character_on_trees(Coalgebra::Ptr forests, RBAlgebra::Ptr codomain,
                                    const std::map<std::string, FreeVec>& tree_values) {
    std::map<std::string, FreeVec> values;
    for (const auto& f : forests->basis()) {
        FreeVec v = codomain->unit();
        for (const auto& t : forest_trees(f)) {
            const auto it = tree_values.find(t);
            if (it == tree_values.end()) throw UnknownBasisKey(t);
            v = codomain->mul(v, it->second);
        }
        if (!v.zero()) values[f] = std::move(v);
    }
    return ConvMap(std::move(forests), std::move(codomain), std::move(values), true);
}

FreeVec ConvMap::value(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? FreeVec() : it->second;
}

FreeVec ConvMap::apply(const FreeVec& h) const {
    FreeVec out;
    for (const auto& [k, c] : h.terms()) {
        FreeVec v = value(k);
        v *= c;
        out += v;
    }
    return out;
}

ConvMap& ConvMap::operator+=(const ConvMap& o) {
    if (codomain_->name() != o.codomain_->name()) throw CodomainMismatch();
    for (const auto& h : domain_->basis()) {
        FreeVec v = value(h);
        v += o.value(h);
        if (v.zero())
            values_.erase(h);
        else
            values_[h] = std::move(v);
    }
    character_ = false;
    return *this;
}

bool operator==(const ConvMap& a, const ConvMap& b) {
    for (const auto& h : a.domain()->basis())
        if (!(a.value(h) == b.value(h))) return false;
    return true;
}

ConvMap convolution_mul(const ConvMap& f, const ConvMap& g) {
    if (f.codomain()->name() != g.codomain()->name()) throw CodomainMismatch();
    std::map<std::string, FreeVec> values;
    for (const auto& h : f.domain()->basis()) {
        FreeVec out;
        for (const auto& [k, c] : f.domain()->coproduct(h).terms()) {
            FreeVec prod = f.codomain()->mul(f.value(k.left), g.value(k.right));
            prod *= c;
            out += prod;
        }
        if (!out.zero()) values[h] = std::move(out);
    }
    const bool character =
        f.is_character() && g.is_character() && f.domain()->has_product();
    return ConvMap(f.domain(), f.codomain(), std::move(values), character, Audit::defer);
}

ConvMap conv_P(const ConvMap& f) {
    std::map<std::string, FreeVec> values;
    for (const auto& h : f.domain()->basis()) {
        FreeVec v = f.codomain()->apply_P(f.value(h));
        if (!v.zero()) values[h] = std::move(v);
    }
    return ConvMap(f.domain(), f.codomain(), std::move(values), false, Audit::defer);
}

ConvMap conv_precompose(const ConvMap& f, const MatrixQ& sigma) {
    const auto& basis = f.domain()->basis();
    const auto n = static_cast<Eigen::Index>(basis.size());
    if (sigma.rows() != n || sigma.cols() != n)
        throw DimensionMismatch("sigma does not match the coalgebra basis");
    std::map<std::string, FreeVec> values;
    for (Eigen::Index j = 0; j < n; ++j) {
        FreeVec image;
        for (Eigen::Index i = 0; i < n; ++i) {
            FreeVec v = f.value(basis[static_cast<std::size_t>(i)]);
            v *= sigma(i, j);
            image += v;
        }
        if (!image.zero()) values[basis[static_cast<std::size_t>(j)]] = std::move(image);
    }
    return ConvMap(f.domain(), f.codomain(), std::move(values), false, Audit::defer);
}

ConvMap conv_pushforward(const RBHom& t, const ConvMap& f) {
    std::map<std::string, FreeVec> values;
    for (const auto& h : f.domain()->basis()) {
        FreeVec v = t.apply(f.value(h));
        if (!v.zero()) values[h] = std::move(v);
    }
    return ConvMap(f.domain(), t.target(), std::move(values), f.is_character(), Audit::defer);
}

bool conv_rb_check(const ConvMap& f, const ConvMap& g) {
    const ConvMap pf = conv_P(f), pg = conv_P(g);
    const ConvMap lhs = convolution_mul(pf, pg);
    ConvMap rhs = conv_P(convolution_mul(f, pg));
    rhs += conv_P(convolution_mul(pf, g));
    ConvMap weighted = conv_P(convolution_mul(f, g));
    for (const auto& h : f.domain()->basis()) {
        FreeVec v = rhs.value(h);
        FreeVec w = weighted.value(h);
        w *= f.codomain()->weight();
        v += w;
        if (!(lhs.value(h) == v)) return false;
    }
    return true;
}

TensorColumn tc_add(const TensorColumn& a, const TensorColumn& b) {
    TensorColumn out = a;
    for (const auto& [k, v] : b) {
        auto [it, inserted] = out.emplace(k, v);
        if (!inserted) {
            it->second += v;
            if (it->second.zero()) out.erase(it);
        }
    }
    return out;
}

TensorColumn tc_scale(const Rational& c, const TensorColumn& a) {
    if (c == 0) return {};
    TensorColumn out = a;
    for (auto& [k, v] : out) v *= c;
    return out;
}

bool tc_eq(const TensorColumn& a, const TensorColumn& b) {
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        if (it == b.end()) {
            if (!v.zero()) return false;
        } else if (!(v == it->second)) {
            return false;
        }
    }
    for (const auto& [k, v] : b)
        if (!a.count(k) && !v.zero()) return false;
    return true;
}

EndAM::EndAM(RBAlgebra::Ptr algebra, std::vector<std::string> carrier,
             std::map<std::string, TensorColumn> images)
    : algebra_(std::move(algebra)), carrier_(std::move(carrier)), images_(std::move(images)) {}

EndAM EndAM::identity(RBAlgebra::Ptr algebra, std::vector<std::string> carrier) {
    std::map<std::string, TensorColumn> images;
    for (const auto& m : carrier) images[m] = TensorColumn{{m, algebra->unit()}};
    return EndAM(std::move(algebra), std::move(carrier), std::move(images));
}

const TensorColumn& EndAM::image(const std::string& key) const {
    const auto it = images_.find(key);
    if (it == images_.end()) throw UnknownBasisKey(key);
    return it->second;
}

TensorColumn EndAM::apply(const TensorColumn& x) const {
    TensorColumn out;
    for (const auto& [mkey, a] : x) {
        for (const auto& [m2, b] : image(mkey)) {
            const FreeVec prod = algebra_->mul(b, a);
            if (prod.zero()) continue;
            auto [it, inserted] = out.emplace(m2, prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.zero()) out.erase(it);
            }
        }
    }
    return out;
}

EndAM& EndAM::operator+=(const EndAM& o) {
    for (const auto& m : carrier_) images_[m] = tc_add(image(m), o.image(m));
    return *this;
}

EndAM EndAM::scaled(const Rational& c) const {
    std::map<std::string, TensorColumn> images;
    for (const auto& m : carrier_) images[m] = tc_scale(c, image(m));
    return EndAM(algebra_, carrier_, std::move(images));
}

bool operator==(const EndAM& a, const EndAM& b) {
    for (const auto& m : a.carrier())
        if (!tc_eq(a.image(m), b.image(m))) return false;
    return true;
}

EndAM compose(const EndAM& g1, const EndAM& g2) {
    std::map<std::string, TensorColumn> images;
    for (const auto& m : g2.carrier()) images[m] = g1.apply(g2.image(m));
    return EndAM(g1.algebra(), g2.carrier(), std::move(images));
}

EndAM phi_map(const Comodule& m, const ConvMap& f) {
    std::map<std::string, TensorColumn> images;
    for (const auto& x : m.carrier()) {
        TensorColumn col;
        for (const auto& [k, c] : m.coaction(x).terms()) {
            FreeVec v = f.value(k.right);
            v *= c;
            if (v.zero()) continue;
            auto [it, inserted] = col.emplace(k.left, v);
            if (!inserted) {
                it->second += v;
                if (it->second.zero()) col.erase(it);
            }
        }
        images[x] = std::move(col);
    }
    return EndAM(f.codomain(), m.carrier(), std::move(images));
}

EndAM end_Q(const EndAM& g) {
    std::map<std::string, TensorColumn> images;
    for (const auto& m : g.carrier()) {
        TensorColumn col;
        for (const auto& [k, v] : g.image(m)) {
            FreeVec qv = g.algebra()->apply_P(v);
            if (!qv.zero()) col[k] = std::move(qv);
        }
        images[m] = std::move(col);
    }
    return EndAM(g.algebra(), g.carrier(), std::move(images));
}

bool end_rb_check(const EndAM& g1, const EndAM& g2) {
    const EndAM q1 = end_Q(g1), q2 = end_Q(g2);
    const EndAM lhs = compose(q1, q2);
    EndAM inner = compose(g1, q2);
    inner += compose(q1, g2);
    inner += compose(g1, g2).scaled(g1.algebra()->weight());
    return lhs == end_Q(inner);
}

TensorColumn module_operator_p(const RBAlgebra& a, const TensorColumn& x) {
    TensorColumn out;
    for (const auto& [k, v] : x) {
        FreeVec pv = a.apply_P(v);
        if (!pv.zero()) out[k] = std::move(pv);
    }
    return out;
}

bool end_module_check(const EndAM& g, const TensorColumn& x) {
    const auto& a = *g.algebra();
    const TensorColumn px = module_operator_p(a, x);
    const TensorColumn lhs = end_Q(g).apply(px);
    TensorColumn rhs = module_operator_p(a, g.apply(px));
    rhs = tc_add(rhs, module_operator_p(a, end_Q(g).apply(x)));
    rhs = tc_add(rhs, tc_scale(a.weight(), module_operator_p(a, g.apply(x))));
    return tc_eq(lhs, rhs);
}

TensorColumn comodule_tensor_action(const Comodule& m, const RBModule& v, const ConvMap& f,
                                    const TensorColumn& x) {
    TensorColumn out;
    for (const auto& [mkey, vec] : x) {
        for (const auto& [k, c] : m.coaction(mkey).terms()) {
            FreeVec acted = v.act(f.value(k.right), vec);
            acted *= c;
            if (acted.zero()) continue;
            auto [it, inserted] = out.emplace(k.left, acted);
            if (!inserted) {
                it->second += acted;
                if (it->second.zero()) out.erase(it);
            }
        }
    }
    return out;
}

TensorColumn comodule_tensor_p(const RBModule& v, const TensorColumn& x) {
    TensorColumn out;
    for (const auto& [k, vec] : x) {
        FreeVec pv = v.apply_p(vec);
        if (!pv.zero()) out[k] = std::move(pv);
    }
    return out;
}

bool comodule_tensor_check(const Comodule& m, const RBModule& v, const ConvMap& f,
                           const TensorColumn& x) {
    const ConvMap pf = conv_P(f);
    const TensorColumn px = comodule_tensor_p(v, x);
    const TensorColumn lhs = comodule_tensor_action(m, v, pf, px);
    TensorColumn rhs = comodule_tensor_p(v, comodule_tensor_action(m, v, f, px));
    rhs = tc_add(rhs, comodule_tensor_p(v, comodule_tensor_action(m, v, pf, x)));
    rhs = tc_add(rhs, tc_scale(f.codomain()->weight(),
                               comodule_tensor_p(v, comodule_tensor_action(m, v, f, x))));
    return tc_eq(lhs, rhs);
}

namespace {

FreeVec column_of(const MatrixQ& m, const std::vector<std::string>& basis,
                  const std::string& key) {
    const auto it = std::find(basis.begin(), basis.end(), key);
    if (it == basis.end()) throw UnknownBasisKey(key);
    const auto j = static_cast<Eigen::Index>(it - basis.begin());
    FreeVec out;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        out.add(basis[static_cast<std::size_t>(i)], m(i, j));
    return out;
}

}  // namespace

CoalgebraCheck rb_coalgebra_check(const Coalgebra& h, const MatrixQ& sigma,
                                  const Rational& lambda) {
    const auto& basis = h.basis();
    const auto n = static_cast<Eigen::Index>(basis.size());
    if (sigma.rows() != n || sigma.cols() != n)
        throw DimensionMismatch("sigma does not match the coalgebra basis");

    const auto sigma_of = [&](const std::string& key) { return column_of(sigma, basis, key); };

    for (const auto& key : basis) {
        // (sigma (x) sigma) Delta
        TensorVec lhs;
        for (const auto& [k, c] : h.coproduct(key).terms()) {
            TensorVec t = tensor_expand(sigma_of(k.left), sigma_of(k.right));
            t *= c;
            lhs += t;
        }
        // (sigma (x) 1 + 1 (x) sigma + lambda) Delta sigma
        TensorVec rhs;
        for (const auto& [sk, sc] : sigma_of(key).terms())
            for (const auto& [k, c] : h.coproduct(sk).terms()) {
                TensorVec t = tensor_expand(sigma_of(k.left), FreeVec::unit(k.right));
                t += tensor_expand(FreeVec::unit(k.left), sigma_of(k.right));
                t.add({k.left, k.right}, lambda);
                t *= sc * c;
                rhs += t;
            }
        if (!(lhs == rhs)) return {false, key};
    }
    return {true, ""};
}

bool hom_precompose_rb_check(const ConvMap& f, const ConvMap& g, const MatrixQ& sigma,
                             const Rational& lambda) {
    const auto p = [&](const ConvMap& x) { return conv_precompose(x, sigma); };
    const ConvMap pf = p(f), pg = p(g);
    const ConvMap lhs = convolution_mul(pf, pg);
    ConvMap rhs = p(convolution_mul(f, pg));
    rhs += p(convolution_mul(pf, g));
    const ConvMap weighted = p(convolution_mul(f, g));
    for (const auto& h : f.domain()->basis()) {
        FreeVec v = rhs.value(h);
        FreeVec w = weighted.value(h);
        w *= lambda;
        v += w;
        if (!(lhs.value(h) == v)) return false;
    }
    return true;
}

CoalgebraCheck rb_comodule_check(const Comodule& m, const MatrixQ& rho, const MatrixQ& sigma,
                                 const Rational& lambda) {
    const auto& carrier = m.carrier();
    const auto& hbasis = m.coalgebra()->basis();
    if (rho.rows() != static_cast<Eigen::Index>(carrier.size()))
        throw DimensionMismatch("rho does not match the carrier");

    const auto rho_of = [&](const std::string& key) { return column_of(rho, carrier, key); };
    const auto sigma_of = [&](const std::string& key) {
        return column_of(sigma, hbasis, key);
    };

    for (const auto& key : carrier) {
        TensorVec lhs;
        for (const auto& [k, c] : m.coaction(key).terms()) {
            TensorVec t = tensor_expand(rho_of(k.left), sigma_of(k.right));
            t *= c;
            lhs += t;
        }
        TensorVec rhs;
        for (const auto& [k, c] : m.coaction(key).terms()) {
            TensorVec t = tensor_expand(rho_of(k.left), FreeVec::unit(k.right));
            t += tensor_expand(FreeVec::unit(k.left), sigma_of(k.right));
            t.add({k.left, k.right}, lambda);
            t *= c;
            rhs += t;
        }
        if (!(lhs == rhs)) return {false, key};
    }
    return {true, ""};
}

bool rb_comodule_module_check(const Comodule& m, const MatrixQ& rho, const MatrixQ& sigma,
                              const Rational& lambda, const ConvMap& f,
                              const TensorColumn& x) {
    const auto& carrier = m.carrier();
    const auto p = [&](const TensorColumn& col) {
        TensorColumn out;
        for (const auto& [k, v] : col)
            for (const auto& [k2, c] : column_of(rho, carrier, k).terms()) {
                FreeVec w = v;
                w *= c;
                if (w.zero()) continue;
                auto [it, inserted] = out.emplace(k2, w);
                if (!inserted) {
                    it->second += w;
                    if (it->second.zero()) out.erase(it);
                }
            }
        return out;
    };
    const auto act = [&](const ConvMap& g, const TensorColumn& col) {
        TensorColumn out;
        for (const auto& [mkey, a] : col)
            for (const auto& [k, c] : m.coaction(mkey).terms()) {
                FreeVec v = f.codomain()->mul(g.value(k.right), a);
                v *= c;
                if (v.zero()) continue;
                auto [it, inserted] = out.emplace(k.left, v);
                if (!inserted) {
                    it->second += v;
                    if (it->second.zero()) out.erase(it);
                }
            }
        return out;
    };
    const ConvMap pf = conv_precompose(f, sigma);

    const TensorColumn lhs = act(pf, p(x));
    TensorColumn rhs = p(act(f, p(x)));
    rhs = tc_add(rhs, p(act(pf, x)));
    rhs = tc_add(rhs, tc_scale(lambda, p(act(f, x))));
    return tc_eq(lhs, rhs);
}

}  // namespace rota
