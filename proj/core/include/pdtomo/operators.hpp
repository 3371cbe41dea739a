#ifndef PDTOMO_OPERATORS_HPP
#define PDTOMO_OPERATORS_HPP

#include <Eigen/Sparse>

#include "pdtomo/grid.hpp"

namespace pdt {

using SparseOperator = Eigen::SparseMatrix<double>;

/// Second-order finite-difference partials on a Grid, assembled with the
/// Kronecker structure Dx = D (x) I, Dy = I (x) D from the one-dimensional
/// derivative matrix D: centered [-1 0 1]/(2h) at interior nodes, one-sided
/// [-3 4 -1]/(2h) and [1 -4 3]/(2h) at the first/last node of each line.
/// Exact on polynomials of degree <= 2 along the differentiated axis.
class DerivativeOps {
public:
    explicit DerivativeOps(const Grid& grid);

    const Grid& grid() const { return grid_; }
    const SparseOperator& dx() const { return dx_; }
    const SparseOperator& dy() const { return dy_; }

    ScalarField apply_dx(const ScalarField& f) const;
    ScalarField apply_dy(const ScalarField& f) const;
    VectorField gradient(const ScalarField& f) const;
    ScalarField divergence(const VectorField& v) const;
    /// Scalar 2D curl J grad-dot: dx(v.y) - dy(v.x). Vanishes to roundoff on
    /// gradients of nodal fields because Dx and Dy commute.
    ScalarField curl(const VectorField& v) const;

private:
    Grid grid_;
    SparseOperator dx_;
    SparseOperator dy_;
};

/// One-dimensional derivative matrix used by DerivativeOps; exposed for tests.
SparseOperator derivative_matrix_1d(int n, double h);

}  // namespace pdt

#endif
