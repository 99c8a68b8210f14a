#include "rota/urb.hpp"

#include <map>

#include "rota/errors.hpp"

namespace rota {

URBElement urb_Q(const RBAlgebra& r) {
    return urb_tensor(tensor_expand(r.unit(), r.unit()));
}

std::string to_string(const URBElement& u) {
    if (u.zero()) return "0";
    std::string s;
    if (!u.scalar.zero()) s += to_string(u.scalar);
    if (!u.tensor.zero()) {
        if (!s.empty()) s += " + ";
        s += to_string(u.tensor);
    }
    return s;
}

namespace {

/// (left expansion) (x) fixed right key.
TensorVec expand_left(const FreeVec& left, const std::string& right, const Rational& c) {
    TensorVec r;
    for (const auto& [k, cv] : left.terms()) r.add({k, right}, cv * c);
    return r;
}

TensorVec expand_right(const std::string& left, const FreeVec& right, const Rational& c) {
    TensorVec r;
    for (const auto& [k, cv] : right.terms()) r.add({left, k}, cv * c);
    return r;
}

}  // namespace

URBElement urb_mul(const RBAlgebra& r, const URBElement& u, const URBElement& v) {
    URBElement out;
    out.scalar = r.mul(u.scalar, v.scalar);

    // scalar . (c (x) d) = (scalar c) (x) d
    if (!u.scalar.zero())
        for (const auto& [key, c] : v.tensor.terms())
            out.tensor += expand_left(r.mul(u.scalar, FreeVec::unit(key.left)), key.right, c);

    // (a (x) b) . scalar = a (x) (b scalar)
    if (!v.scalar.zero())
        for (const auto& [key, c] : u.tensor.terms())
            out.tensor += expand_right(key.left, r.mul(FreeVec::unit(key.right), v.scalar), c);

    // (a (x) b) . (c (x) d) = a P(bc) (x) d + a (x) tilde(bc) d
    for (const auto& [ku, cu] : u.tensor.terms())
        for (const auto& [kv, cv] : v.tensor.terms()) {
            const Rational c = cu * cv;
            const FreeVec middle = r.mul(FreeVec::unit(ku.right), FreeVec::unit(kv.left));
            const FreeVec pole = r.apply_P(middle);
            if (!pole.zero())
                out.tensor += expand_left(r.mul(FreeVec::unit(ku.left), pole), kv.right, c);
            const FreeVec rest = r.mul(r.apply_tilde(middle), FreeVec::unit(kv.right));
            if (!rest.zero()) out.tensor += expand_right(ku.left, rest, c);
        }
    return out;
}

bool urb_relation_check(const RBAlgebra& r, const FreeVec& elem) {
    const URBElement q = urb_Q(r);
    const URBElement lhs = urb_mul(r, urb_mul(r, q, urb_scalar(elem)), q);
    URBElement rhs = urb_mul(r, urb_scalar(r.apply_P(elem)), q);
    rhs += urb_mul(r, q, urb_scalar(r.apply_tilde(elem)));
    return lhs == rhs;
}

bool urb_associativity_check(const RBAlgebra& r, const URBElement& u, const URBElement& v,
                             const URBElement& w) {
    return urb_mul(r, urb_mul(r, u, v), w) == urb_mul(r, u, urb_mul(r, v, w));
}

long urb_dimension(const RBAlgebra& r) {
    if (!r.finite_based()) throw NotFiniteBased(r.name());
    const auto basis = r.basis();
    const long d = static_cast<long>(basis.size());
    // Constructed basis {x_i} plus {x_i (x) x_j}; the count is the result.
    long count = d;
    for (const auto& a : basis)
        for (const auto& b : basis) {
            (void)a;
            (void)b;
            ++count;
        }
    if (count != d * (d + 1)) throw Error("basis count mismatch in urb_dimension");
    return count;
}

FreeVec urb_act(const RBAlgebra& r, const RBModule& m, const URBElement& u, const FreeVec& x) {
    FreeVec out = m.act(u.scalar, x);
    for (const auto& [key, c] : u.tensor.terms()) {
        FreeVec v = m.act(FreeVec::unit(key.left),
                          m.apply_p(m.act(FreeVec::unit(key.right), x)));
        v *= c;
        out += v;
    }
    (void)r;
    return out;
}

URBElement urb_opposite_iso(const URBElement& u) {
    URBElement out;
    out.scalar = u.scalar;
    for (const auto& [key, c] : u.tensor.terms()) out.tensor.add({key.right, key.left}, c);
    return out;
}

RBAlgebra::Ptr urb_opposite_target(RBAlgebra::Ptr r) {
    return RBAlgebra::opposite(RBAlgebra::tilde(std::move(r)));
}

std::pair<URBElement, URBElement> urb_product_projection(const RBAlgebra& r1,
                                                         const RBAlgebra& r2,
                                                         const URBElement& u) {
    if (r1.weight() != r2.weight())
        throw WeightMismatch("projection factors have different weights");
    const auto split_key = [](const std::string& key) -> std::pair<int, std::string> {
        if (key.size() < 3 || (key[0] != '1' && key[0] != '2') || key[1] != ':')
            throw UnknownBasisKey(key);
        return {key[0] - '0', key.substr(2)};
    };
    URBElement first, second;
    for (const auto& [k, c] : u.scalar.terms()) {
        const auto [side, inner] = split_key(k);
        (side == 1 ? first : second).scalar.add(inner, c);
    }
    for (const auto& [k, c] : u.tensor.terms()) {
        const auto [ls, lk] = split_key(k.left);
        const auto [rs, rk] = split_key(k.right);
        if (ls != rs) continue;  // cross tensors are the kernel
        (ls == 1 ? first : second).tensor.add({lk, rk}, c);
    }
    return {first, second};
}

namespace {

/// Basis bookkeeping for U_RB(R') at finite dimension: scalars first, then
/// tensor pairs in lexicographic basis order.
struct UBasis {
    std::vector<std::string> scalars;
    std::vector<TensorKey> tensors;
    std::map<std::string, Eigen::Index> scalar_index;
    std::map<std::pair<std::string, std::string>, Eigen::Index> tensor_index;

    explicit UBasis(const RBAlgebra& r) {
        const auto basis = r.basis();
        Eigen::Index idx = 0;
        for (const auto& k : basis) {
            scalars.push_back(k);
            scalar_index[k] = idx++;
        }
        for (const auto& a : basis)
            for (const auto& b : basis) {
                tensors.push_back({a, b});
                tensor_index[{a, b}] = idx++;
            }
    }

    Eigen::Index size() const {
        return static_cast<Eigen::Index>(scalars.size() + tensors.size());
    }

    VectorQ coords(const URBElement& u) const {
        VectorQ v = VectorQ::Constant(size(), Rational(0));
        for (const auto& [k, c] : u.scalar.terms()) {
            const auto it = scalar_index.find(k);
            if (it == scalar_index.end()) throw UnknownBasisKey(k);
            v(it->second) = c;
        }
        for (const auto& [k, c] : u.tensor.terms()) {
            const auto it = tensor_index.find({k.left, k.right});
            if (it == tensor_index.end()) throw UnknownBasisKey(tensor_key_str(k));
            v(it->second) = c;
        }
        return v;
    }

    URBElement element(Eigen::Index i) const {
        if (i < static_cast<Eigen::Index>(scalars.size()))
            return urb_scalar(FreeVec::unit(scalars[static_cast<std::size_t>(i)]));
        const auto& t = tensors[static_cast<std::size_t>(i) - scalars.size()];
        return urb_pure(t.left, t.right);
    }
};

}  // namespace

CoinduceResult coinduce(const RBHom& f, const RBModule& m) {
    const auto& source = *f.source();
    const auto& target = *f.target();
    if (!source.finite_based() || !target.finite_based())
        throw NotFiniteBased("coinduction needs finite-based algebras");
    const Eigen::Index mdim = m.dim();

    const UBasis ub(target);
    const Eigen::Index usize = ub.size();
    const Eigen::Index total = usize * mdim;

    const auto flat = [&](Eigen::Index ui, Eigen::Index xi) { return ui * mdim + xi; };

    // Rows spanning the balancing relations u eta(w) (x) x - u (x) w x over
    // the whole operator-ring basis of the source: w runs over scalars and
    // pure tensors, eta maps r -> f(r) and a (x) b -> f(a) (x) f(b), and w
    // acts on the carrier through the module action (Q acting as p).
    const UBasis wb(source);
    std::vector<VectorQ> relations;
    relations.reserve(static_cast<std::size_t>(usize) *
                      static_cast<std::size_t>(wb.size()) * static_cast<std::size_t>(mdim));
    for (Eigen::Index ui = 0; ui < usize; ++ui) {
        const URBElement u = ub.element(ui);
        for (Eigen::Index wi = 0; wi < wb.size(); ++wi) {
            const URBElement w = wb.element(wi);
            URBElement eta_w;
            if (!w.scalar.zero()) {
                eta_w = urb_scalar(f.apply(w.scalar));
            } else {
                const auto& key = w.tensor.terms().begin()->first;
                eta_w = urb_tensor(tensor_expand(f.apply(FreeVec::unit(key.left)),
                                                 f.apply(FreeVec::unit(key.right))));
            }
            const URBElement ufw = urb_mul(target, u, eta_w);
            const VectorQ ufw_coords = ub.coords(ufw);
            for (Eigen::Index xi = 0; xi < mdim; ++xi) {
                VectorQ row = VectorQ::Constant(total, Rational(0));
                for (Eigen::Index k = 0; k < usize; ++k)
                    if (ufw_coords(k) != 0) row(flat(k, xi)) = ufw_coords(k);
                const VectorQ wx = m.to_coords(
                    urb_act(source, m, w,
                            FreeVec::unit(m.carrier()[static_cast<std::size_t>(xi)])));
                for (Eigen::Index k = 0; k < mdim; ++k)
                    if (wx(k) != 0) row(flat(ui, k)) -= wx(k);
                if (!row.isZero(0)) relations.push_back(std::move(row));
            }
        }
    }

    MatrixQ rel = MatrixQ::Constant(static_cast<Eigen::Index>(relations.size()), total,
                                    Rational(0));
    for (std::size_t i = 0; i < relations.size(); ++i)
        rel.row(static_cast<Eigen::Index>(i)) = relations[i].transpose();
    const auto pivots = rref_in_place(rel);

    std::vector<bool> is_pivot(static_cast<std::size_t>(total), false);
    for (const auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index c = 0; c < total; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
    const Eigen::Index qdim = static_cast<Eigen::Index>(free_cols.size());

    // Normal form modulo the relation row space, then the free coordinates.
    const auto reduce = [&](VectorQ v) {
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const Rational c = v(pivots[i]);
            if (c != 0) v -= c * VectorQ(rel.row(static_cast<Eigen::Index>(i)).transpose());
        }
        VectorQ q = VectorQ::Constant(qdim, Rational(0));
        for (Eigen::Index k = 0; k < qdim; ++k) q(k) = v(free_cols[static_cast<std::size_t>(k)]);
        return q;
    };

    const auto image_matrix = [&](const URBElement& left) {
        MatrixQ img = MatrixQ::Constant(qdim, qdim, Rational(0));
        for (Eigen::Index col = 0; col < qdim; ++col) {
            const Eigen::Index ui = free_cols[static_cast<std::size_t>(col)] / mdim;
            const Eigen::Index xi = free_cols[static_cast<std::size_t>(col)] % mdim;
            const URBElement prod = urb_mul(target, left, ub.element(ui));
            const VectorQ pcoords = ub.coords(prod);
            VectorQ v = VectorQ::Constant(total, Rational(0));
            for (Eigen::Index k = 0; k < usize; ++k)
                if (pcoords(k) != 0) v(flat(k, xi)) = pcoords(k);
            img.col(col) = reduce(v);
        }
        return img;
    };

    std::vector<std::string> carrier;
    for (Eigen::Index k = 0; k < qdim; ++k) carrier.push_back("q" + std::to_string(k));
    std::map<std::string, MatrixQ> action;
    for (const auto& k : target.basis())
        action[k] = image_matrix(urb_scalar(FreeVec::unit(k)));
    MatrixQ p = image_matrix(urb_Q(target));

    RBModule module = RBModule::matrix_module(f.target(), std::move(carrier),
                                              std::move(action), std::move(p));

    MatrixQ natural = MatrixQ::Constant(qdim, mdim, Rational(0));
    const VectorQ unit_coords = ub.coords(urb_scalar(target.unit()));
    for (Eigen::Index xi = 0; xi < mdim; ++xi) {
        VectorQ v = VectorQ::Constant(total, Rational(0));
        for (Eigen::Index k = 0; k < usize; ++k)
            if (unit_coords(k) != 0) v(flat(k, xi)) = unit_coords(k);
        natural.col(xi) = reduce(v);
    }
    return {std::move(module), std::move(natural)};
}

}  // namespace rota
