#include "rota/linalg.hpp"

#include <algorithm>

#include "rota/errors.hpp"

namespace rota {

std::vector<Eigen::Index> rref_in_place(MatrixQ& m) {
    std::vector<Eigen::Index> pivots;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (m(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r) m.row(pivot).swap(m.row(r));
        const Rational inv = 1 / Rational(m(r, c));
        for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Eigen::Index rank(const MatrixQ& m) {
    MatrixQ copy = m;
    return static_cast<Eigen::Index>(rref_in_place(copy).size());
}

MatrixQ kernel_rows(const MatrixQ& m) {
    const Eigen::Index cols = m.cols();
    MatrixQ red = m;
    const auto pivots = rref_in_place(red);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    const Eigen::Index dim = cols - static_cast<Eigen::Index>(pivots.size());
    MatrixQ basis = MatrixQ::Constant(dim, cols, Rational(0));
    Eigen::Index row = 0;
    for (Eigen::Index free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        basis(row, free) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            basis(row, pivots[i]) = -red(static_cast<Eigen::Index>(i), free);
        ++row;
    }
    rref_in_place(basis);  // normal form fixes the basis uniquely
    return basis;
}

std::optional<MatrixQ> inverse(const MatrixQ& m) {
    const Eigen::Index n = m.rows();
    if (n != m.cols()) return std::nullopt;
    MatrixQ aug(n, 2 * n);
    aug.block(0, 0, n, n) = m;
    aug.block(0, n, n, n) = MatrixQ::Identity(n, n);
    const auto pivots = rref_in_place(aug);
    Eigen::Index left_pivots = 0;
    for (const auto c : pivots)
        if (c < n) ++left_pivots;
    if (left_pivots != n) return std::nullopt;
    return MatrixQ(aug.block(0, n, n, n));
}

bool same_row_space(const MatrixQ& a, const MatrixQ& b) {
    if (a.cols() != b.cols()) return false;
    MatrixQ ra = a, rb = b;
    const auto pa = rref_in_place(ra);
    const auto pb = rref_in_place(rb);
    if (pa.size() != pb.size()) return false;
    const Eigen::Index r = static_cast<Eigen::Index>(pa.size());
    return exact_eq(ra.topRows(r), rb.topRows(r));
}

bool in_row_space(const MatrixQ& rows, const VectorQ& v) {
    MatrixQ stacked = vstack(rows, v.transpose());
    return rank(stacked) == rank(rows);
}

MatrixQ vstack(const MatrixQ& a, const MatrixQ& b) {
    if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
        throw DimensionMismatch("vstack: column counts differ");
    MatrixQ r(a.rows() + b.rows(), std::max(a.cols(), b.cols()));
    r.topRows(a.rows()) = a;
    r.bottomRows(b.rows()) = b;
    return r;
}

LinearMap::LinearMap(std::vector<std::string> domain, std::vector<std::string> codomain,
                     MatrixQ matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != static_cast<Eigen::Index>(codomain_.size()) ||
        matrix_.cols() != static_cast<Eigen::Index>(domain_.size()))
        throw DimensionMismatch("linear map matrix does not match basis sizes");
}

LinearMap LinearMap::identity(const std::vector<std::string>& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    return LinearMap(basis, basis, MatrixQ::Identity(n, n));
}

LinearMap LinearMap::zero(const std::vector<std::string>& domain,
                          const std::vector<std::string>& codomain) {
    return LinearMap(domain, codomain,
                     MatrixQ::Constant(static_cast<Eigen::Index>(codomain.size()),
                                       static_cast<Eigen::Index>(domain.size()), Rational(0)));
}

VectorQ LinearMap::to_coords(const FreeVec& v) const {
    VectorQ coords = VectorQ::Constant(static_cast<Eigen::Index>(domain_.size()), Rational(0));
    for (const auto& [k, c] : v.terms()) {
        const auto it = std::find(domain_.begin(), domain_.end(), k);
        if (it == domain_.end()) throw UnknownBasisKey(k);
        coords(it - domain_.begin()) = c;
    }
    return coords;
}

FreeVec LinearMap::from_coords(const VectorQ& coords) const {
    FreeVec v;
    for (Eigen::Index i = 0; i < coords.size(); ++i)
        v.add(codomain_[static_cast<std::size_t>(i)], coords(i));
    return v;
}

FreeVec LinearMap::apply(const FreeVec& v) const {
    const VectorQ image = matrix_ * to_coords(v);
    return from_coords(image);
}

LinearMap LinearMap::compose(const LinearMap& g) const {
    if (g.codomain_ != domain_)
        throw DimensionMismatch("compose: inner codomain differs from outer domain");
    return LinearMap(g.domain_, codomain_, matrix_ * g.matrix_);
}

std::vector<FreeVec> kernel_basis(const LinearMap& f) {
    const MatrixQ rows = kernel_rows(f.matrix());
    std::vector<FreeVec> basis;
    basis.reserve(static_cast<std::size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        FreeVec v;
        for (Eigen::Index j = 0; j < rows.cols(); ++j)
            v.add(f.domain()[static_cast<std::size_t>(j)], rows(i, j));
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace rota
