#ifndef ROWPADE_NULLSPACE_HPP
#define ROWPADE_NULLSPACE_HPP

#include "rowpade/eigen_support.hpp"

#include <vector>

namespace rowpade {

template <class S>
struct NullspaceResult {
    Vector<S> vector;
    /// max_i |(M v)_i|; exactly zero in exact mode.
    Real residual;
};

/// Reduced row echelon form over Q(i). Returns the pivot column of each nonzero row.
std::vector<Eigen::Index> row_reduce(Matrix<Exact>& m);

/// Nonzero solution of M v = 0 for a matrix with more columns than rows.
///
/// Exact mode reduces M to echelon form and sets the highest-index free column
/// to 1 and every other free column to 0, so the returned vector is a function of
/// the row space of M only. Float mode returns the unit vector orthogonal to the
/// row space obtained from a Householder factorization of M^H.
NullspaceResult<Exact> nullspace_vector(const Matrix<Exact>& m);
NullspaceResult<Float> nullspace_vector(const Matrix<Float>& m);

/// One basis vector per free column, each with that free column set to 1.
std::vector<Vector<Exact>> nullspace_basis(const Matrix<Exact>& m);

}  // namespace rowpade

#endif
