#include "pdtomo/operators.hpp"

#include <vector>

namespace pdt {

SparseOperator derivative_matrix_1d(int n, double h) {
    const int m = n + 1;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * m);
    const double inv2h = 1.0 / (2.0 * h);
    trip.emplace_back(0, 0, -3.0 * inv2h);
    trip.emplace_back(0, 1, 4.0 * inv2h);
    trip.emplace_back(0, 2, -1.0 * inv2h);
    for (int i = 1; i < n; ++i) {
        trip.emplace_back(i, i - 1, -inv2h);
        trip.emplace_back(i, i + 1, inv2h);
    }
    trip.emplace_back(n, n - 2, 1.0 * inv2h);
    trip.emplace_back(n, n - 1, -4.0 * inv2h);
    trip.emplace_back(n, n, 3.0 * inv2h);
    SparseOperator d(m, m);
    d.setFromTriplets(trip.begin(), trip.end());
    return d;
}

namespace {

// kron(A, I_m) and kron(I_m, A) for square sparse A.
SparseOperator kron_left(const SparseOperator& a, int m) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(a.nonZeros()) * m);
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseOperator::InnerIterator it(a, k); it; ++it) {
            for (int r = 0; r < m; ++r) {
                trip.emplace_back(static_cast<int>(it.row()) * m + r,
                                  static_cast<int>(it.col()) * m + r, it.value());
            }
        }
    }
    SparseOperator out(a.rows() * m, a.cols() * m);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

SparseOperator kron_right(const SparseOperator& a, int m) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(a.nonZeros()) * m);
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseOperator::InnerIterator it(a, k); it; ++it) {
            for (int r = 0; r < m; ++r) {
                trip.emplace_back(r * static_cast<int>(a.rows()) + static_cast<int>(it.row()),
                                  r * static_cast<int>(a.cols()) + static_cast<int>(it.col()),
                                  it.value());
            }
        }
    }
    SparseOperator out(a.rows() * m, a.cols() * m);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

}  // namespace

DerivativeOps::DerivativeOps(const Grid& grid) : grid_(grid) {
    const SparseOperator d = derivative_matrix_1d(grid.n(), grid.h());
    const int m = grid.nodes_per_side();
    dx_ = kron_left(d, m);
    dy_ = kron_right(d, m);
}

ScalarField DerivativeOps::apply_dx(const ScalarField& f) const {
    require_same_grid(grid_, f.grid(), "DerivativeOps::apply_dx");
    return ScalarField(grid_, dx_ * f.values());
}

ScalarField DerivativeOps::apply_dy(const ScalarField& f) const {
    require_same_grid(grid_, f.grid(), "DerivativeOps::apply_dy");
    return ScalarField(grid_, dy_ * f.values());
}

VectorField DerivativeOps::gradient(const ScalarField& f) const {
    return VectorField(apply_dx(f), apply_dy(f));
}

ScalarField DerivativeOps::divergence(const VectorField& v) const {
    require_same_grid(grid_, v.grid(), "DerivativeOps::divergence");
    return ScalarField(grid_, dx_ * v.x.values() + dy_ * v.y.values());
}

ScalarField DerivativeOps::curl(const VectorField& v) const {
    require_same_grid(grid_, v.grid(), "DerivativeOps::curl");
    return ScalarField(grid_, dx_ * v.y.values() - dy_ * v.x.values());
}

}  // namespace pdt
