#include "rota/rbmodule.hpp"

#include <algorithm>

#include "rota/errors.hpp"

namespace rota {

RBModule RBModule::matrix_module(RBAlgebra::Ptr algebra, std::vector<std::string> carrier,
                                 std::map<std::string, MatrixQ> action, MatrixQ p,
                                 Audit audit) {
    if (!algebra->finite_based())
        throw NotFiniteBased("matrix modules require a finite-based algebra; use the regular "
                             "module for " + algebra->name());
    RBModule m;
    m.algebra_ = std::move(algebra);
    m.carrier_ = std::move(carrier);
    m.action_ = std::move(action);
    m.p_ = std::move(p);
    const auto n = static_cast<Eigen::Index>(m.carrier_.size());
    for (Eigen::Index i = 0; i < n; ++i) m.index_[m.carrier_[static_cast<std::size_t>(i)]] = i;
    if (m.p_.rows() != n || m.p_.cols() != n)
        throw DimensionMismatch("operator matrix does not match the carrier");
    const auto basis = m.algebra_->basis();
    for (const auto& k : basis) {
        const auto it = m.action_.find(k);
        if (it == m.action_.end())
            throw UnknownBasisKey("missing action matrix for " + k);
        if (it->second.rows() != n || it->second.cols() != n)
            throw DimensionMismatch("action matrix for " + k + " does not match the carrier");
    }

    if (audit == Audit::check) {
        if (!exact_eq(m.action_of(m.algebra_->unit()), MatrixQ::Identity(n, n)))
            throw AxiomViolation("unit of " + m.algebra_->name() + " does not act as identity");
        for (const auto& a : basis)
            for (const auto& b : basis) {
                const MatrixQ lhs = m.action_.at(a) * m.action_.at(b);
                const MatrixQ rhs =
                    m.action_of(m.algebra_->mul(FreeVec::unit(a), FreeVec::unit(b)));
                if (!exact_eq(lhs, rhs))
                    throw AxiomViolation("action not associative at (" + a + ", " + b + ")");
            }
        for (const auto& g : m.algebra_->generator_keys())
            for (const auto& x : m.carrier_) {
                if (!rbm_check(m, FreeVec::unit(g), FreeVec::unit(x)))
                    throw AxiomViolation("module law fails at (" + g + ", " + x + ")");
                m.certificate_.emplace_back(g, x);
            }
    }
    return m;
}

RBModule RBModule::regular(RBAlgebra::Ptr algebra) {
    RBModule m;
    m.algebra_ = std::move(algebra);
    m.regular_ = true;
    return m;
}

RBModule RBModule::regular_materialized(RBAlgebra::Ptr algebra) {
    const auto basis = algebra->basis();
    const auto n = static_cast<Eigen::Index>(basis.size());
    std::map<std::string, MatrixQ> action;
    for (const auto& k : basis) {
        MatrixQ a(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const FreeVec col =
                algebra->mul(FreeVec::unit(k), FreeVec::unit(basis[static_cast<std::size_t>(j)]));
            for (Eigen::Index i = 0; i < n; ++i)
                a(i, j) = col.coeff(basis[static_cast<std::size_t>(i)]);
        }
        action[k] = std::move(a);
    }
    MatrixQ p(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const FreeVec col = algebra->apply_P(FreeVec::unit(basis[static_cast<std::size_t>(j)]));
        for (Eigen::Index i = 0; i < n; ++i)
            p(i, j) = col.coeff(basis[static_cast<std::size_t>(i)]);
    }
    return matrix_module(algebra, basis, std::move(action), std::move(p));
}

Eigen::Index RBModule::dim() const {
    if (regular_) throw NotFiniteBased("regular module carrier is the algebra itself");
    return static_cast<Eigen::Index>(carrier_.size());
}

const std::vector<std::string>& RBModule::carrier() const {
    if (regular_) throw NotFiniteBased("regular module carrier is the algebra itself");
    return carrier_;
}

const MatrixQ& RBModule::p_matrix() const {
    if (regular_) throw NotFiniteBased("regular module operator is the algebra operator");
    return p_;
}

const MatrixQ& RBModule::action_matrix(const std::string& basis_key) const {
    const auto it = action_.find(basis_key);
    if (it == action_.end()) throw UnknownBasisKey(basis_key);
    return it->second;
}

FreeVec RBModule::act(const FreeVec& r, const FreeVec& x) const {
    if (regular_) return algebra_->mul(r, x);
    return from_coords(action_of(r) * to_coords(x));
}

FreeVec RBModule::apply_p(const FreeVec& x) const {
    if (regular_) return algebra_->apply_P(x);
    return from_coords(p_ * to_coords(x));
}

FreeVec RBModule::apply_p_tilde(const FreeVec& x) const {
    FreeVec r = x;
    r *= -algebra_->weight();
    r -= apply_p(x);
    return r;
}

MatrixQ RBModule::action_of(const FreeVec& r) const {
    if (regular_) throw NotFiniteBased("regular module action is symbolic");
    const auto n = static_cast<Eigen::Index>(carrier_.size());
    MatrixQ m = MatrixQ::Constant(n, n, Rational(0));
    for (const auto& [k, c] : r.terms()) {
        const auto it = action_.find(k);
        if (it == action_.end()) throw UnknownBasisKey(k);
        m += c * it->second;
    }
    return m;
}

VectorQ RBModule::to_coords(const FreeVec& x) const {
    VectorQ v = VectorQ::Constant(static_cast<Eigen::Index>(carrier_.size()), Rational(0));
    for (const auto& [k, c] : x.terms()) {
        const auto it = index_.find(k);
        if (it == index_.end()) throw UnknownBasisKey(k);
        v(it->second) = c;
    }
    return v;
}

FreeVec RBModule::from_coords(const VectorQ& coords) const {
    FreeVec x;
    for (Eigen::Index i = 0; i < coords.size(); ++i)
        x.add(carrier_[static_cast<std::size_t>(i)], coords(i));
    return x;
}

bool rbm_check(const RBModule& m, const FreeVec& a, const FreeVec& x) {
    const auto& r = *m.algebra();
    const FreeVec lhs = m.act(r.apply_P(a), m.apply_p(x));
    FreeVec rhs = m.apply_p(m.act(a, m.apply_p(x)));
    rhs += m.apply_p(m.act(r.apply_P(a), x));
    FreeVec weighted = m.apply_p(m.act(a, x));
    weighted *= r.weight();
    rhs += weighted;
    return lhs == rhs;
}

ModuleSplitResult module_split(const RBModule& m) {
    const Rational& lambda = m.algebra()->weight();
    const SplitResult split = regular_singular_split(m.p_matrix(), lambda);
    ModuleSplitResult result{split.minus_lambda, split.zero, true, ""};

    // Stability: the -lambda eigenspace under P(R) and ker p under ker P.
    const auto check_stable = [&](const MatrixQ& space, const MatrixQ& act) {
        for (Eigen::Index i = 0; i < space.rows(); ++i) {
            const VectorQ image = act * VectorQ(space.row(i).transpose());
            if (!in_row_space(space, image)) return false;
        }
        return true;
    };
    for (const auto& g : m.algebra()->generator_keys()) {
        const FreeVec pg = m.algebra()->apply_P(FreeVec::unit(g));
        if (!pg.zero() && !check_stable(result.minus_lambda, m.action_of(pg))) {
            result.stable = false;
            result.report = "P(R) does not preserve the -lambda eigenspace at generator " + g;
            return result;
        }
    }
    // ker P on the sampled span: generators g with P(g) = 0 lie in R_0.
    for (const auto& g : m.algebra()->generator_keys()) {
        const FreeVec vg = FreeVec::unit(g);
        if (m.algebra()->apply_P(vg).zero() &&
            !check_stable(result.zero, m.action_of(vg))) {
            result.stable = false;
            result.report = "ker P does not preserve ker p at generator " + g;
            return result;
        }
    }
    return result;
}

FreeVec derived_action(const RBModule& m, const FreeVec& r, const FreeVec& x) {
    FreeVec v = m.act(m.algebra()->apply_P(r), x);
    v += m.act(r, m.apply_p(x));
    FreeVec weighted = m.act(r, x);
    weighted *= m.algebra()->weight();
    v += weighted;
    return v;
}

RBModule dual_module(const RBModule& m) {
    const auto dual_algebra = RBAlgebra::tilde(m.algebra());
    if (m.is_regular()) return RBModule::regular(dual_algebra);
    const auto n = m.dim();
    MatrixQ p_tilde = -m.algebra()->weight() * MatrixQ::Identity(n, n) - m.p_matrix();
    std::map<std::string, MatrixQ> action;
    for (const auto& k : m.algebra()->basis()) action[k] = m.action_matrix(k);
    return RBModule::matrix_module(dual_algebra, m.carrier(), std::move(action),
                                   std::move(p_tilde));
}

RBModule scale_module(const RBModule& m, const Rational& alpha) {
    const auto scaled_algebra = RBAlgebra::scaled(m.algebra(), alpha);
    if (m.is_regular()) return RBModule::regular(scaled_algebra);
    std::map<std::string, MatrixQ> action;
    for (const auto& k : m.algebra()->basis()) action[k] = m.action_matrix(k);
    return RBModule::matrix_module(scaled_algebra, m.carrier(), std::move(action),
                                   MatrixQ(alpha * m.p_matrix()));
}

std::pair<FreeVec, FreeVec> atkinson_module_pair(const RBModule& m, const FreeVec& x) {
    return {m.apply_p(x), m.apply_p_tilde(x)};
}

bool atkinson_closure_check(const RBModule& m, const FreeVec& r, const FreeVec& x) {
    const auto& alg = *m.algebra();
    const FreeVec star = derived_action(m, r, x);
    const bool first = m.apply_p(star) == m.act(alg.apply_P(r), m.apply_p(x));
    FreeVec rhs = m.act(alg.apply_tilde(r), m.apply_p_tilde(x));
    rhs *= Rational(-1);
    const bool second = m.apply_p_tilde(star) == rhs;
    return first && second;
}

FreeVec BimoduleWitness::act_left(const FreeVec& r, const FreeVec& x) const {
    const auto n = static_cast<Eigen::Index>(carrier.size());
    MatrixQ m = MatrixQ::Constant(n, n, Rational(0));
    for (const auto& [k, c] : r.terms()) {
        const auto it = left_action.find(k);
        if (it == left_action.end()) throw UnknownBasisKey(k);
        m += c * it->second;
    }
    return from_coords(m * to_coords(x));
}

FreeVec BimoduleWitness::act_right(const FreeVec& x, const FreeVec& s) const {
    const auto n = static_cast<Eigen::Index>(carrier.size());
    MatrixQ m = MatrixQ::Constant(n, n, Rational(0));
    for (const auto& [k, c] : s.terms()) {
        const auto it = right_action.find(k);
        if (it == right_action.end()) throw UnknownBasisKey(k);
        m += c * it->second;
    }
    return from_coords(m * to_coords(x));
}

FreeVec BimoduleWitness::apply_p(const FreeVec& x) const {
    return from_coords(p * to_coords(x));
}

VectorQ BimoduleWitness::to_coords(const FreeVec& x) const {
    VectorQ v = VectorQ::Constant(static_cast<Eigen::Index>(carrier.size()), Rational(0));
    for (const auto& [k, c] : x.terms()) {
        const auto it = std::find(carrier.begin(), carrier.end(), k);
        if (it == carrier.end()) throw UnknownBasisKey(k);
        v(it - carrier.begin()) = c;
    }
    return v;
}

FreeVec BimoduleWitness::from_coords(const VectorQ& coords) const {
    FreeVec x;
    for (Eigen::Index i = 0; i < coords.size(); ++i)
        x.add(carrier[static_cast<std::size_t>(i)], coords(i));
    return x;
}

BimoduleCheckResult strict_bimodule_check(const BimoduleWitness& b, const FreeVec& r,
                                          const FreeVec& m, const FreeVec& s) {
    const Rational& lambda = b.left->weight();
    const Rational& mu = b.right->weight();
    BimoduleCheckResult result;

    {
        const FreeVec lhs = b.act_right(b.apply_p(m), b.right->apply_P(s));
        FreeVec inner = b.act_right(b.apply_p(m), s);
        inner += b.act_right(m, b.right->apply_P(s));
        FreeVec weighted = b.act_right(m, s);
        weighted *= mu;
        inner += weighted;
        result.right_identity = lhs == b.apply_p(inner);
    }
    {
        const FreeVec lhs = b.act_left(b.left->apply_P(r), b.apply_p(m));
        FreeVec inner = b.act_left(r, b.apply_p(m));
        inner += b.act_left(b.left->apply_P(r), m);
        FreeVec weighted = b.act_left(r, m);
        weighted *= lambda;
        inner += weighted;
        result.left_identity = lhs == b.apply_p(inner);
    }
    {
        FreeVec v = b.apply_p(b.act_right(b.act_left(r, b.apply_p(m)), s));
        v *= lambda - mu;
        result.lemma = v.zero();
    }
    return result;
}

ProductModuleResult product_module_conditions(const RBModule& m1, const RBModule& m2,
                                              const MatrixQ& p12, const MatrixQ& p21) {
    const auto& r1 = m1.algebra();
    const auto& r2 = m2.algebra();
    if (r1->weight() != r2->weight())
        throw WeightMismatch("product module factors have different weights");
    const Eigen::Index n1 = m1.dim(), n2 = m2.dim();
    if (p12.rows() != n1 || p12.cols() != n2 || p21.rows() != n2 || p21.cols() != n1)
        throw DimensionMismatch("cross operator shapes do not match the carriers");

    ProductModuleResult result;

    // i = 1, j = 2: r1 acts on M1, m2 runs over the M2 basis.
    for (const auto& g : r1->basis())
        for (Eigen::Index j = 0; j < n2; ++j) {
            VectorQ m2v = VectorQ::Constant(n2, Rational(0));
            m2v(j) = 1;
            const VectorQ v = m1.action_matrix(g) * (p12 * m2v);
            if (!(p21 * v).isZero(0)) {
                result.report = "(a) fails for i=1 at (" + g + ", basis " + std::to_string(j) + ")";
                return result;
            }
            const VectorQ lhs = m1.p_matrix() * v;
            const VectorQ rhs =
                m1.action_of(r1->apply_P(FreeVec::unit(g))) * (p12 * m2v);
            if (!exact_eq(lhs, rhs)) {
                result.report = "(b) fails for i=1 at (" + g + ", basis " + std::to_string(j) + ")";
                return result;
            }
        }
    // i = 2, j = 1.
    for (const auto& g : r2->basis())
        for (Eigen::Index j = 0; j < n1; ++j) {
            VectorQ m1v = VectorQ::Constant(n1, Rational(0));
            m1v(j) = 1;
            const VectorQ v = m2.action_matrix(g) * (p21 * m1v);
            if (!(p12 * v).isZero(0)) {
                result.report = "(a) fails for i=2 at (" + g + ", basis " + std::to_string(j) + ")";
                return result;
            }
            const VectorQ lhs = m2.p_matrix() * v;
            const VectorQ rhs =
                m2.action_of(r2->apply_P(FreeVec::unit(g))) * (p21 * m1v);
            if (!exact_eq(lhs, rhs)) {
                result.report = "(b) fails for i=2 at (" + g + ", basis " + std::to_string(j) + ")";
                return result;
            }
        }

    // Assemble over the product algebra with tagged carrier keys.
    const auto product_algebra = RBAlgebra::product(r1, r2);
    std::vector<std::string> carrier;
    for (const auto& k : m1.carrier()) carrier.push_back("1:" + k);
    for (const auto& k : m2.carrier()) carrier.push_back("2:" + k);
    const Eigen::Index n = n1 + n2;

    std::map<std::string, MatrixQ> action;
    for (const auto& k : r1->basis()) {
        MatrixQ a = MatrixQ::Constant(n, n, Rational(0));
        a.block(0, 0, n1, n1) = m1.action_matrix(k);
        action["1:" + k] = std::move(a);
    }
    for (const auto& k : r2->basis()) {
        MatrixQ a = MatrixQ::Constant(n, n, Rational(0));
        a.block(n1, n1, n2, n2) = m2.action_matrix(k);
        action["2:" + k] = std::move(a);
    }
    MatrixQ p = MatrixQ::Constant(n, n, Rational(0));
    p.block(0, 0, n1, n1) = m1.p_matrix();
    p.block(0, n1, n1, n2) = p12;
    p.block(n1, 0, n2, n1) = p21;
    p.block(n1, n1, n2, n2) = m2.p_matrix();

    result.conditions_ok = true;
    try {
        result.module = RBModule::matrix_module(product_algebra, std::move(carrier),
                                                std::move(action), std::move(p));
        result.law_ok = true;
    } catch (const AxiomViolation& e) {
        result.law_ok = false;
        result.report = e.what();
    }
    return result;
}

bool is_module_hom(const RBModule& m, const RBModule& n, const MatrixQ& f) {
    if (m.algebra()->name() != n.algebra()->name()) return false;
    for (const auto& k : m.algebra()->basis())
        if (!exact_eq(f * m.action_matrix(k), n.action_matrix(k) * f)) return false;
    return exact_eq(f * m.p_matrix(), n.p_matrix() * f);
}

Eigen::Index hom_space_dim(const RBModule& m, const RBModule& n) {
    const Eigen::Index dm = m.dim(), dn = n.dim();
    // Unknowns: entries of f (dn x dm), constraints f A_M - A_N f = 0 per
    // basis key plus the operator; vec(f) with column-major stacking.
    const auto basis = m.algebra()->basis();
    const Eigen::Index unknowns = dm * dn;
    const Eigen::Index block = unknowns;
    MatrixQ system =
        MatrixQ::Constant(static_cast<Eigen::Index>(basis.size() + 1) * block, unknowns,
                          Rational(0));

    const auto emit = [&](Eigen::Index row0, const MatrixQ& a_m, const MatrixQ& a_n) {
        // (f * a_m - a_n * f)(i, j) = sum_k f(i,k) a_m(k,j) - a_n(i,k) f(k,j)
        for (Eigen::Index i = 0; i < dn; ++i)
            for (Eigen::Index j = 0; j < dm; ++j) {
                const Eigen::Index row = row0 + i + j * dn;
                for (Eigen::Index k = 0; k < dm; ++k)
                    system(row, i + k * dn) += a_m(k, j);
                for (Eigen::Index k = 0; k < dn; ++k)
                    system(row, k + j * dn) -= a_n(i, k);
            }
    };

    Eigen::Index row0 = 0;
    for (const auto& k : basis) {
        emit(row0, m.action_matrix(k), n.action_matrix(k));
        row0 += block;
    }
    emit(row0, m.p_matrix(), n.p_matrix());
    return unknowns - rank(system);
}

}  // namespace rota
