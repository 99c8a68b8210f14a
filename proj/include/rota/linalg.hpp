#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rota/free_vector.hpp"
#include "rota/rational.hpp"

namespace rota {

/// Reduces m in place to reduced row echelon form; returns the pivot columns.
std::vector<Eigen::Index> rref_in_place(MatrixQ& m);

inline MatrixQ rref(MatrixQ m) {
    rref_in_place(m);
    return m;
}

Eigen::Index rank(const MatrixQ& m);

/// Canonical basis of ker(m) as the rows of the returned matrix, in reduced
/// row echelon form. Empty (0 x cols) iff m is injective.
MatrixQ kernel_rows(const MatrixQ& m);

/// Exact inverse; empty optional when singular.
std::optional<MatrixQ> inverse(const MatrixQ& m);

/// Row spaces compared via their reduced echelon normal forms.
bool same_row_space(const MatrixQ& a, const MatrixQ& b);

/// True iff v lies in the row space of rows.
bool in_row_space(const MatrixQ& rows, const VectorQ& v);

/// Stacks a on top of b (both with the same column count).
MatrixQ vstack(const MatrixQ& a, const MatrixQ& b);

/// A linear map between free modules with named ordered bases; the matrix is
/// codomain x domain.
class LinearMap {
  public:
    LinearMap() = default;
    LinearMap(std::vector<std::string> domain, std::vector<std::string> codomain,
              MatrixQ matrix);

    static LinearMap identity(const std::vector<std::string>& basis);
    static LinearMap zero(const std::vector<std::string>& domain,
                          const std::vector<std::string>& codomain);

    const std::vector<std::string>& domain() const { return domain_; }
    const std::vector<std::string>& codomain() const { return codomain_; }
    const MatrixQ& matrix() const { return matrix_; }

    /// Matrix-vector product. Throws UnknownBasisKey if v has support outside
    /// the domain basis.
    FreeVec apply(const FreeVec& v) const;

    /// this after g (domain of *this must equal codomain of g).
    LinearMap compose(const LinearMap& g) const;

    VectorQ to_coords(const FreeVec& v) const;
    FreeVec from_coords(const VectorQ& coords) const;

  private:
    std::vector<std::string> domain_;
    std::vector<std::string> codomain_;
    MatrixQ matrix_;
};

/// Canonical kernel basis of f as FreeVecs over the domain basis.
std::vector<FreeVec> kernel_basis(const LinearMap& f);

}  // namespace rota
