#include "rowpade/nullspace.hpp"

#include <stdexcept>

namespace rowpade {

namespace {

void check_shape(Eigen::Index rows, Eigen::Index cols) {
    if (cols == 0 || cols <= rows) throw std::invalid_argument("nullspace_vector: need more columns than rows");
}

template <class S>
Real residual_of(const Matrix<S>& m, const Vector<S>& v) {
    Real worst(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        S acc(0);
        for (Eigen::Index j = 0; j < m.cols(); ++j) acc += m(i, j) * v(j);
        worst = std::max<Real>(worst, abs(acc));
    }
    return worst;
}

Vector<Exact> basis_vector(const Matrix<Exact>& reduced, const std::vector<Eigen::Index>& pivots, Eigen::Index free_col) {
    Vector<Exact> v = Vector<Exact>::Constant(reduced.cols(), Exact(0));
    v(free_col) = Exact(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v(pivots[i]) = -reduced(static_cast<Eigen::Index>(i), free_col);
    return v;
}

std::vector<Eigen::Index> free_columns(Eigen::Index cols, const std::vector<Eigen::Index>& pivots) {
    std::vector<Eigen::Index> free;
    std::size_t p = 0;
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (p < pivots.size() && pivots[p] == j)
            ++p;
        else
            free.push_back(j);
    }
    return free;
}

}  // namespace

std::vector<Eigen::Index> row_reduce(Matrix<Exact>& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row) m.row(p).swap(m.row(row));
        const Exact inv = Exact(1) / m(row, col);
        m.row(row) *= inv;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Exact factor = m(i, col);
            m.row(i) -= factor * m.row(row);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

NullspaceResult<Exact> nullspace_vector(const Matrix<Exact>& m) {
    check_shape(m.rows(), m.cols());
    Matrix<Exact> reduced = m;
    const auto pivots = row_reduce(reduced);
    const auto free = free_columns(m.cols(), pivots);
    // More columns than rows guarantees at least one free column.
    return {basis_vector(reduced, pivots, free.back()), Real(0)};
}

std::vector<Vector<Exact>> nullspace_basis(const Matrix<Exact>& m) {
    Matrix<Exact> reduced = m;
    const auto pivots = row_reduce(reduced);
    std::vector<Vector<Exact>> basis;
    for (auto col : free_columns(m.cols(), pivots)) basis.push_back(basis_vector(reduced, pivots, col));
    return basis;
}

NullspaceResult<Float> nullspace_vector(const Matrix<Float>& m) {
    check_shape(m.rows(), m.cols());
    const Eigen::Index n = m.cols();
    // Columns of A = M^H; reflectors H_k zero A below the diagonal.
    Matrix<Float> a(n, m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(j, i) = conj(m(i, j));

    std::vector<Vector<Float>> reflectors;
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        Real len2(0);
        for (Eigen::Index i = k; i < n; ++i) len2 += norm(a(i, k));
        Vector<Float> v = Vector<Float>::Constant(n, Float(0));
        if (len2 == 0) {
            reflectors.push_back(std::move(v));
            continue;
        }
        const Real len = mp::sqrt(len2);
        const Real head = abs(a(k, k));
        const Float phase = head == 0 ? Float(1) : a(k, k) / Float(head);
        for (Eigen::Index i = k; i < n; ++i) v(i) = a(i, k);
        v(k) += phase * Float(len);
        Real vv(0);
        for (Eigen::Index i = k; i < n; ++i) vv += norm(v(i));
        for (Eigen::Index j = k; j < a.cols(); ++j) {
            Float dot(0);
            for (Eigen::Index i = k; i < n; ++i) dot += conj(v(i)) * a(i, j);
            const Float s = Float(Real(2) / vv) * dot;
            for (Eigen::Index i = k; i < n; ++i) a(i, j) -= s * v(i);
        }
        for (Eigen::Index i = k; i < n; ++i) v(i) /= Float(mp::sqrt(vv / 2));
        reflectors.push_back(std::move(v));
    }

    // Last column of H_0 H_1 ... H_{r-1}, each H = I - v v^H with |v|^2 = 2.
    Vector<Float> q = Vector<Float>::Constant(n, Float(0));
    q(n - 1) = Float(1);
    for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) {
        const auto& v = *it;
        Float dot(0);
        for (Eigen::Index i = 0; i < n; ++i) dot += conj(v(i)) * q(i);
        if (dot.is_zero()) continue;
        for (Eigen::Index i = 0; i < n; ++i) q(i) -= dot * v(i);
    }
    Real res = residual_of(m, q);
    return {std::move(q), std::move(res)};
}

}  // namespace rowpade
