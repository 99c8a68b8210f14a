#include "rota/rbalgebra.hpp"

#include <algorithm>

#include "rota/errors.hpp"

namespace rota {

namespace {

struct MatrixKey {
    int row, col;
    std::string inner;
};

MatrixKey parse_matrix_key(const std::string& key) {
    if (key.empty() || key[0] != 'E') throw UnknownBasisKey(key);
    const auto comma = key.find(',');
    const auto colon = key.find(':');
    if (comma == std::string::npos || colon == std::string::npos || colon < comma)
        throw UnknownBasisKey(key);
    try {
        return {std::stoi(key.substr(1, comma - 1)),
                std::stoi(key.substr(comma + 1, colon - comma - 1)), key.substr(colon + 1)};
    } catch (const std::exception&) {
        throw UnknownBasisKey(key);
    }
}

std::string matrix_key(int i, int j, const std::string& inner) {
    return "E" + std::to_string(i) + "," + std::to_string(j) + ":" + inner;
}

std::pair<int, std::string> parse_product_key(const std::string& key) {
    if (key.size() < 3 || (key[0] != '1' && key[0] != '2') || key[1] != ':')
        throw UnknownBasisKey(key);
    return {key[0] - '0', key.substr(2)};
}

std::string product_key(int side, const std::string& inner) {
    return std::to_string(side) + ":" + inner;
}

FreeVec map_keys(const FreeVec& v, const std::function<std::string(const std::string&)>& f) {
    FreeVec r;
    for (const auto& [k, c] : v.terms()) r.add(f(k), c);
    return r;
}

}  // namespace

RBAlgebra::Ptr RBAlgebra::finite(std::string name, Rational weight,
                                 std::vector<std::string> basis, MultTable mult, FreeVec unit,
                                 MatrixQ op, bool commutative, Audit audit) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::finite;
    r->name_ = std::move(name);
    r->weight_ = std::move(weight);
    r->commutative_ = commutative;
    r->basis_ = std::move(basis);
    r->mult_ = std::move(mult);
    r->unit_ = std::move(unit);
    r->op_ = std::move(op);
    const auto n = static_cast<Eigen::Index>(r->basis_.size());
    if (r->op_.rows() != n || r->op_.cols() != n)
        throw DimensionMismatch("operator matrix does not match the basis size");
    for (Eigen::Index i = 0; i < n; ++i)
        r->basis_index_[r->basis_[static_cast<std::size_t>(i)]] = i;
    if (audit == Audit::check) {
        // Table sanity on the full basis: associativity and unit.
        for (const auto& a : r->basis_)
            for (const auto& b : r->basis_) {
                for (const auto& c : r->basis_) {
                    const auto va = FreeVec::unit(a), vb = FreeVec::unit(b),
                               vc = FreeVec::unit(c);
                    if (!(r->mul(r->mul(va, vb), vc) == r->mul(va, r->mul(vb, vc))))
                        throw AxiomViolation("multiplication not associative at (" + a + ", " +
                                             b + ", " + c + ")");
                }
                if (r->commutative_) {
                    const auto va = FreeVec::unit(a), vb = FreeVec::unit(b);
                    if (!(r->mul(va, vb) == r->mul(vb, va)))
                        throw AxiomViolation("declared commutative but " + a + "*" + b +
                                             " != " + b + "*" + a);
                }
            }
        for (const auto& a : r->basis_) {
            const auto va = FreeVec::unit(a);
            if (!(r->mul(r->unit_, va) == va) || !(r->mul(va, r->unit_) == va))
                throw AxiomViolation("unit law fails at " + a);
        }
        r->audit_laws();
    }
    return r;
}

RBAlgebra::Ptr RBAlgebra::scalar_product(std::string name, Rational weight,
                                         std::vector<Rational> p_scalars, Audit audit) {
    const auto n = p_scalars.size();
    std::vector<std::string> basis;
    basis.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        basis.push_back(n == 1 ? "1" : "e" + std::to_string(i + 1));
    MultTable mult;
    FreeVec unit;
    for (std::size_t i = 0; i < n; ++i) {
        mult[{basis[i], basis[i]}] = FreeVec::unit(basis[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) mult[{basis[i], basis[j]}] = FreeVec();
        unit.add(basis[i], 1);
    }
    MatrixQ op = MatrixQ::Constant(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n), Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p_scalars[i];
    return finite(std::move(name), std::move(weight), std::move(basis), std::move(mult),
                  std::move(unit), std::move(op), true, audit);
}

RBAlgebra::Ptr RBAlgebra::scalar(std::string name, Rational weight, Rational p_scalar,
                                 Audit audit) {
    return scalar_product(std::move(name), std::move(weight), {std::move(p_scalar)}, audit);
}

RBAlgebra::Ptr RBAlgebra::laurent(int precision, Rational weight, std::string symbol,
                                  int generator_bound, Audit audit) {
    if (precision < 1) throw DimensionMismatch("laurent precision must be >= 1");
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::laurent;
    r->name_ = "laurent(" + symbol + ", order " + std::to_string(precision) + ")";
    r->weight_ = std::move(weight);
    r->commutative_ = true;
    r->precision_ = precision;
    r->symbol_ = std::move(symbol);
    r->gen_bound_ = std::min(generator_bound, precision);
    if (audit == Audit::check) r->audit_laws();
    return r;
}

RBAlgebra::Ptr RBAlgebra::divided(unsigned long index_bound, unsigned long generator_bound,
                                  Audit audit) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::divided;
    r->name_ = "divided";
    r->weight_ = 0;
    r->commutative_ = true;
    r->index_bound_ = index_bound;
    r->dgen_bound_ = generator_bound;
    if (audit == Audit::check) r->audit_laws();
    return r;
}

RBAlgebra::Ptr RBAlgebra::matrix_over(Ptr inner, int n, Audit audit) {
    if (!inner->commutative())
        throw AxiomViolation("matrix instances require a commutative inner algebra");
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::matrix;
    r->name_ = "M" + std::to_string(n) + "(" + inner->name() + ")";
    r->weight_ = inner->weight();
    r->commutative_ = false;
    r->inner_ = std::move(inner);
    r->size_ = n;
    if (audit == Audit::check) r->audit_laws();
    return r;
}

RBAlgebra::Ptr RBAlgebra::product(Ptr left, Ptr right, Audit audit) {
    if (left->weight() != right->weight())
        throw WeightMismatch("product factors have weights " + rat_str(left->weight()) +
                             " and " + rat_str(right->weight()));
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::product;
    r->name_ = left->name() + " x " + right->name();
    r->weight_ = left->weight();
    r->commutative_ = left->commutative() && right->commutative();
    r->left_ = std::move(left);
    r->right_ = std::move(right);
    if (audit == Audit::check) r->audit_laws();
    return r;
}

RBAlgebra::Ptr RBAlgebra::tilde(Ptr base) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::tilde;
    r->name_ = "tilde(" + base->name() + ")";
    r->weight_ = base->weight();
    r->commutative_ = base->commutative();
    r->base_ = std::move(base);
    return r;
}

RBAlgebra::Ptr RBAlgebra::opposite(Ptr base) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::opposite;
    r->name_ = "op(" + base->name() + ")";
    r->weight_ = base->weight();
    r->commutative_ = base->commutative();
    r->base_ = std::move(base);
    return r;
}

RBAlgebra::Ptr RBAlgebra::zero_operator(Ptr base, Rational weight) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::override_op;
    r->override_ = OpOverride::zero;
    r->name_ = base->name() + " with P=0";
    r->weight_ = std::move(weight);
    r->commutative_ = base->commutative();
    r->base_ = std::move(base);
    return r;
}

RBAlgebra::Ptr RBAlgebra::identity_operator(Ptr base) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::override_op;
    r->override_ = OpOverride::identity;
    r->name_ = base->name() + " with P=Id";
    r->weight_ = -1;
    r->commutative_ = base->commutative();
    r->base_ = std::move(base);
    return r;
}

RBAlgebra::Ptr RBAlgebra::neg_weight_operator(Ptr base, Rational weight) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::override_op;
    r->override_ = OpOverride::neg_weight;
    r->name_ = base->name() + " with P=-weight";
    r->weight_ = std::move(weight);
    r->commutative_ = base->commutative();
    r->base_ = std::move(base);
    return r;
}

RBAlgebra::Ptr RBAlgebra::scaled(Ptr base, Rational alpha) {
    auto r = std::shared_ptr<RBAlgebra>(new RBAlgebra());
    r->kind_ = Kind::scaled;
    r->name_ = "scaled(" + base->name() + ", " + rat_str(alpha) + ")";
    r->weight_ = alpha * base->weight();
    r->commutative_ = base->commutative();
    r->base_ = std::move(base);
    r->alpha_ = std::move(alpha);
    return r;
}

bool RBAlgebra::finite_based() const {
    switch (kind_) {
        case Kind::finite: return true;
        case Kind::laurent:
        case Kind::divided: return false;
        case Kind::matrix: return inner_->finite_based();
        case Kind::product: return left_->finite_based() && right_->finite_based();
        default: return base_->finite_based();
    }
}

std::vector<std::string> RBAlgebra::basis() const {
    switch (kind_) {
        case Kind::finite: return basis_;
        case Kind::matrix: {
            if (!finite_based()) throw NotFiniteBased(name_);
            std::vector<std::string> keys;
            for (int i = 1; i <= size_; ++i)
                for (int j = 1; j <= size_; ++j)
                    for (const auto& k : inner_->basis()) keys.push_back(matrix_key(i, j, k));
            return keys;
        }
        case Kind::product: {
            if (!finite_based()) throw NotFiniteBased(name_);
            std::vector<std::string> keys;
            for (const auto& k : left_->basis()) keys.push_back(product_key(1, k));
            for (const auto& k : right_->basis()) keys.push_back(product_key(2, k));
            return keys;
        }
        case Kind::tilde:
        case Kind::opposite:
        case Kind::scaled:
        case Kind::override_op: return base_->basis();
        default: throw NotFiniteBased(name_);
    }
}

FreeVec RBAlgebra::unit() const {
    switch (kind_) {
        case Kind::finite: return unit_;
        case Kind::laurent: return FreeVec::unit(laurent_key(0, symbol_));
        case Kind::divided: return FreeVec::unit(divided_key(0));
        case Kind::matrix: {
            FreeVec u;
            for (int i = 1; i <= size_; ++i)
                u += map_keys(inner_->unit(),
                              [&](const std::string& k) { return matrix_key(i, i, k); });
            return u;
        }
        case Kind::product: {
            FreeVec u = map_keys(left_->unit(),
                                 [](const std::string& k) { return product_key(1, k); });
            u += map_keys(right_->unit(),
                          [](const std::string& k) { return product_key(2, k); });
            return u;
        }
        default: return base_->unit();
    }
}

FreeVec RBAlgebra::mul_keys(const std::string& a, const std::string& b) const {
    switch (kind_) {
        case Kind::finite: {
            const auto it = mult_.find({a, b});
            if (it == mult_.end()) {
                if (!basis_index_.count(a)) throw UnknownBasisKey(a);
                if (!basis_index_.count(b)) throw UnknownBasisKey(b);
                return FreeVec();
            }
            return it->second;
        }
        case Kind::laurent: {
            const int deg = laurent_degree(a, symbol_) + laurent_degree(b, symbol_);
            if (deg > precision_)
                throw PrecisionExhausted("laurent product reaches degree " +
                                         std::to_string(deg) + " beyond order " +
                                         std::to_string(precision_));
            return FreeVec::unit(laurent_key(deg, symbol_));
        }
        case Kind::divided: {
            const unsigned long m = divided_index(a), n = divided_index(b);
            if (m + n > index_bound_)
                throw PrecisionExhausted("divided power index " + std::to_string(m + n) +
                                         " beyond bound " + std::to_string(index_bound_));
            return FreeVec::unit(divided_key(m + n), Rational(binomial(m + n, m)));
        }
        case Kind::matrix: {
            const auto ka = parse_matrix_key(a), kb = parse_matrix_key(b);
            if (ka.col != kb.row) return FreeVec();
            const FreeVec prod =
                inner_->mul(FreeVec::unit(ka.inner), FreeVec::unit(kb.inner));
            return map_keys(prod, [&](const std::string& k) {
                return matrix_key(ka.row, kb.col, k);
            });
        }
        case Kind::product: {
            const auto [sa, ia] = parse_product_key(a);
            const auto [sb, ib] = parse_product_key(b);
            if (sa != sb) return FreeVec();
            const auto& factor = sa == 1 ? left_ : right_;
            const FreeVec prod = factor->mul(FreeVec::unit(ia), FreeVec::unit(ib));
            return map_keys(prod, [&, side = sa](const std::string& k) {
                return product_key(side, k);
            });
        }
        case Kind::opposite:
            return base_->mul(FreeVec::unit(b), FreeVec::unit(a));
        default:  // tilde, scaled, override_op: multiplication of the base
            return base_->mul(FreeVec::unit(a), FreeVec::unit(b));
    }
}

FreeVec RBAlgebra::mul(const FreeVec& a, const FreeVec& b) const {
    FreeVec r;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            FreeVec prod = mul_keys(ka, kb);
            prod *= ca * cb;
            r += prod;
        }
    return r;
}

FreeVec RBAlgebra::apply_P_key(const std::string& k) const {
    switch (kind_) {
        case Kind::finite: {
            const auto it = basis_index_.find(k);
            if (it == basis_index_.end()) throw UnknownBasisKey(k);
            FreeVec r;
            for (Eigen::Index i = 0; i < op_.rows(); ++i)
                r.add(basis_[static_cast<std::size_t>(i)], op_(i, it->second));
            return r;
        }
        case Kind::laurent:
            return laurent_degree(k, symbol_) < 0 ? FreeVec::unit(k) : FreeVec();
        case Kind::divided: {
            const unsigned long m = divided_index(k);
            if (m + 1 > index_bound_)
                throw PrecisionExhausted("divided power index " + std::to_string(m + 1) +
                                         " beyond bound " + std::to_string(index_bound_));
            return FreeVec::unit(divided_key(m + 1));
        }
        case Kind::matrix: {
            const auto mk = parse_matrix_key(k);
            return map_keys(inner_->apply_P(FreeVec::unit(mk.inner)),
                            [&](const std::string& inner_key) {
                                return matrix_key(mk.row, mk.col, inner_key);
                            });
        }
        case Kind::product: {
            const auto [side, inner_key] = parse_product_key(k);
            const auto& factor = side == 1 ? left_ : right_;
            return map_keys(factor->apply_P(FreeVec::unit(inner_key)),
                            [&, s = side](const std::string& kk) {
                                return product_key(s, kk);
                            });
        }
        case Kind::tilde:
            return base_->apply_tilde(FreeVec::unit(k));
        case Kind::opposite:
            return base_->apply_P(FreeVec::unit(k));
        case Kind::scaled: {
            FreeVec r = base_->apply_P(FreeVec::unit(k));
            r *= alpha_;
            return r;
        }
        case Kind::override_op:
            switch (override_) {
                case OpOverride::zero: return FreeVec();
                case OpOverride::identity: return FreeVec::unit(k);
                case OpOverride::neg_weight: return FreeVec::unit(k, -weight_);
            }
    }
    throw Error("unreachable");
}

FreeVec RBAlgebra::apply_P(const FreeVec& x) const {
    FreeVec r;
    for (const auto& [k, c] : x.terms()) {
        FreeVec img = apply_P_key(k);
        img *= c;
        r += img;
    }
    return r;
}

FreeVec RBAlgebra::apply_tilde(const FreeVec& x) const {
    FreeVec r = x;
    r *= -weight_;
    r -= apply_P(x);
    return r;
}

std::vector<std::string> RBAlgebra::generator_keys() const {
    switch (kind_) {
        case Kind::finite: return basis_;
        case Kind::laurent: {
            // Pole monomials by increasing pole order first, then the
            // regular ones; the checker reports the first violating pair
            // in this enumeration.
            std::vector<std::string> keys;
            for (int i = -1; i >= -gen_bound_; --i) keys.push_back(laurent_key(i, symbol_));
            for (int i = 0; i <= gen_bound_; ++i) keys.push_back(laurent_key(i, symbol_));
            return keys;
        }
        case Kind::divided: {
            std::vector<std::string> keys;
            for (unsigned long k = 0; k <= dgen_bound_; ++k) keys.push_back(divided_key(k));
            return keys;
        }
        case Kind::matrix: {
            std::vector<std::string> keys;
            for (int i = 1; i <= size_; ++i)
                for (int j = 1; j <= size_; ++j)
                    for (const auto& k : inner_->generator_keys())
                        keys.push_back(matrix_key(i, j, k));
            return keys;
        }
        case Kind::product: {
            std::vector<std::string> keys;
            for (const auto& k : left_->generator_keys()) keys.push_back(product_key(1, k));
            for (const auto& k : right_->generator_keys()) keys.push_back(product_key(2, k));
            return keys;
        }
        default: return base_->generator_keys();
    }
}

std::optional<Rational> RBAlgebra::p_of_unit_scalar() const {
    const FreeVec pu = apply_P(unit());
    if (pu.zero()) return Rational(0);
    const FreeVec u = unit();
    // pu == c * u for some scalar c?
    const auto& [k0, c0] = *pu.terms().begin();
    const Rational u0 = u.coeff(k0);
    if (u0 == 0) return std::nullopt;
    const Rational c = c0 / u0;
    FreeVec diff = u;
    diff *= c;
    diff -= pu;
    if (diff.zero()) return c;
    return std::nullopt;
}

void RBAlgebra::audit_laws() const {
    const auto gens = generator_keys();
    // Matrix instances inherit the law entrywise; auditing the inner algebra
    // (done on construction) plus a thin sample here keeps audits fast.
    const std::size_t cap = kind_ == Kind::matrix ? 12 : gens.size();
    for (std::size_t i = 0; i < std::min(gens.size(), cap); ++i)
        for (std::size_t j = 0; j < std::min(gens.size(), cap); ++j) {
            const auto x = FreeVec::unit(gens[i]), y = FreeVec::unit(gens[j]);
            try {
                if (!rb_check(*this, x, y))
                    throw AxiomViolation("Rota-Baxter law fails at (" + gens[i] + ", " +
                                         gens[j] + ") in " + name_);
            } catch (const PrecisionExhausted&) {
                // pairs whose products escape the degree budget are not sampled
            }
        }
}

int RBAlgebra::laurent_precision() const {
    if (kind_ == Kind::laurent) return precision_;
    if (base_) return base_->laurent_precision();
    if (inner_) return inner_->laurent_precision();
    throw Error("not a laurent instance: " + name_);
}

const std::string& RBAlgebra::laurent_symbol() const {
    if (kind_ == Kind::laurent) return symbol_;
    if (base_) return base_->laurent_symbol();
    if (inner_) return inner_->laurent_symbol();
    throw Error("not a laurent instance: " + name_);
}

RBAlgebra::Ptr RBAlgebra::inner() const { return inner_; }
int RBAlgebra::matrix_size() const { return size_; }
RBAlgebra::Ptr RBAlgebra::left() const { return left_; }
RBAlgebra::Ptr RBAlgebra::right() const { return right_; }
RBAlgebra::Ptr RBAlgebra::base() const { return base_; }
const Rational& RBAlgebra::scale_factor() const { return alpha_; }

bool rb_check(const RBAlgebra& R, const FreeVec& x, const FreeVec& y) {
    const FreeVec px = R.apply_P(x), py = R.apply_P(y);
    const FreeVec lhs = R.mul(px, py);
    FreeVec rhs = R.apply_P(R.mul(x, py));
    rhs += R.apply_P(R.mul(px, y));
    FreeVec weighted = R.apply_P(R.mul(x, y));
    weighted *= R.weight();
    rhs += weighted;
    return lhs == rhs;
}

FreeVec star_product(const RBAlgebra& R, const FreeVec& x, const FreeVec& y) {
    FreeVec r = R.mul(x, R.apply_P(y));
    r += R.mul(R.apply_P(x), y);
    FreeVec weighted = R.mul(x, y);
    weighted *= R.weight();
    r += weighted;
    return r;
}

bool quasi_idempotent_check(const RBAlgebra& R, const std::vector<FreeVec>& samples) {
    for (const auto& x : samples) {
        const FreeVec px = R.apply_P(x);
        FreeVec v = R.apply_P(px);
        FreeVec weighted = px;
        weighted *= R.weight();
        v += weighted;
        if (!v.zero()) return false;
    }
    return true;
}

bool right_p1_invariance_check(const RBAlgebra& R, const FreeVec& u) {
    const FreeVec p1 = R.apply_P(R.unit());
    return R.apply_P(R.mul(u, p1)) == R.mul(R.apply_P(u), p1);
}

SplitResult regular_singular_split(const MatrixQ& p, const Rational& lambda) {
    if (lambda == 0) throw ZeroWeight();
    const Eigen::Index n = p.rows();
    if (p.cols() != n) throw DimensionMismatch("operator must be square");
    MatrixQ quasi = p * p + lambda * p;
    if (!is_zero(quasi)) throw NotQuasiIdempotent();
    MatrixQ shifted = p + lambda * MatrixQ::Identity(n, n);
    SplitResult r{kernel_rows(shifted), kernel_rows(p)};
    return r;
}

SplitResult regular_singular_split(const LinearMap& p, const Rational& lambda) {
    if (p.domain() != p.codomain())
        throw DimensionMismatch("operator must act on a single basis");
    return regular_singular_split(p.matrix(), lambda);
}

MatrixQ split_reconstruct(const SplitResult& split, const Rational& lambda) {
    const Eigen::Index n = split.minus_lambda.cols();
    const Eigen::Index r = split.minus_lambda.rows();
    MatrixQ basis(n, n);
    basis.topRows(r) = split.minus_lambda;
    basis.bottomRows(split.zero.rows()) = split.zero;
    const auto inv = inverse(MatrixQ(basis.transpose()));
    if (!inv) throw DimensionMismatch("eigenspaces do not span the module");
    MatrixQ diag = MatrixQ::Constant(n, n, Rational(0));
    for (Eigen::Index i = 0; i < r; ++i) diag(i, i) = -lambda;
    return basis.transpose() * diag * *inv;
}

MatrixOverA mat_mul(const RBAlgebra& A, const MatrixOverA& x, const MatrixOverA& y) {
    if (x.cols() != y.rows()) throw DimensionMismatch("matrix product shapes do not compose");
    MatrixOverA r(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) {
            FreeVec sum;
            for (int l = 0; l < x.cols(); ++l) sum += A.mul(x.at(i, l), y.at(l, j));
            r.at(i, j) = std::move(sum);
        }
    return r;
}

MatrixOverA mat_add(const MatrixOverA& x, const MatrixOverA& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw DimensionMismatch("matrix sum shapes differ");
    MatrixOverA r = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) += y.at(i, j);
    return r;
}

MatrixOverA mat_scale(const Rational& c, const MatrixOverA& x) {
    MatrixOverA r = x;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) *= c;
    return r;
}

MatrixOverA mat_Q(const RBAlgebra& A, const MatrixOverA& x) {
    MatrixOverA r(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = A.apply_P(x.at(i, j));
    return r;
}

bool matrix_rb_product_check(const RBAlgebra& A, const MatrixOverA& x, const MatrixOverA& y) {
    const MatrixOverA qx = mat_Q(A, x), qy = mat_Q(A, y);
    const MatrixOverA lhs = mat_mul(A, qx, qy);
    MatrixOverA inner = mat_add(mat_mul(A, qx, y), mat_mul(A, x, qy));
    inner = mat_add(inner, mat_scale(A.weight(), mat_mul(A, x, y)));
    return lhs == mat_Q(A, inner);
}

std::pair<FreeVec, FreeVec> atkinson_pair(const RBAlgebra& R, const FreeVec& r) {
    return {R.apply_P(r), R.apply_tilde(r)};
}

RBHom::RBHom(RBAlgebra::Ptr source, RBAlgebra::Ptr target,
             std::function<FreeVec(const FreeVec&)> fn, Audit audit)
    : source_(std::move(source)), target_(std::move(target)), fn_(std::move(fn)) {
    if (source_->weight() != target_->weight())
        throw WeightMismatch("homomorphism endpoints have different weights");
    if (audit == Audit::defer) return;
    if (!(fn_(source_->unit()) == target_->unit()))
        throw AxiomViolation("homomorphism does not preserve the unit");
    const auto gens = source_->generator_keys();
    for (const auto& ga : gens)
        for (const auto& gb : gens) {
            const auto a = FreeVec::unit(ga), b = FreeVec::unit(gb);
            try {
                if (!(fn_(source_->mul(a, b)) == target_->mul(fn_(a), fn_(b))))
                    throw AxiomViolation("homomorphism not multiplicative at (" + ga + ", " +
                                         gb + ")");
            } catch (const PrecisionExhausted&) {
                // products escaping either budget are not sampled
            }
        }
    for (const auto& g : gens) {
        const auto a = FreeVec::unit(g);
        try {
            if (!(fn_(source_->apply_P(a)) == target_->apply_P(fn_(a))))
                throw AxiomViolation("homomorphism does not commute with the operator at " + g);
        } catch (const PrecisionExhausted&) {
        }
    }
}

RBHom RBHom::identity(RBAlgebra::Ptr R) {
    auto fn = [](const FreeVec& x) { return x; };
    return RBHom(R, R, fn, Audit::defer);
}

RBHom RBHom::laurent_truncation(RBAlgebra::Ptr source, RBAlgebra::Ptr target) {
    if (source->kind() != RBAlgebra::Kind::laurent ||
        target->kind() != RBAlgebra::Kind::laurent)
        throw Error("truncation expects laurent instances");
    const int bound = target->laurent_precision();
    const std::string sym = source->laurent_symbol();
    auto fn = [bound, sym](const FreeVec& x) {
        for (const auto& [k, c] : x.terms()) {
            (void)c;
            if (laurent_degree(k, sym) > bound)
                throw PrecisionExhausted("value has degree beyond the target order");
        }
        return x;
    };
    return RBHom(std::move(source), std::move(target), fn, Audit::check);
}

}  // namespace rota
