#include "pdtomo/elliptic.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <cmath>
#include <unsupported/Eigen/IterativeSolvers>
#include <vector>

namespace pdt {

TensorField::TensorField(ScalarField m11, ScalarField m12, ScalarField m22)
    : a11(std::move(m11)), a12(std::move(m12)), a22(std::move(m22)) {
    require_same_grid(a11.grid(), a12.grid(), "TensorField");
    require_same_grid(a11.grid(), a22.grid(), "TensorField");
}

TensorField TensorField::identity(const Grid& grid) {
    return constant(grid, 1.0, 0.0, 1.0);
}

TensorField TensorField::constant(const Grid& grid, double m11, double m12, double m22) {
    return TensorField(ScalarField::constant(grid, m11), ScalarField::constant(grid, m12),
                       ScalarField::constant(grid, m22));
}

VectorField TensorField::apply(const VectorField& v) const {
    require_same_grid(grid(), v.grid(), "TensorField::apply");
    return VectorField(
        ScalarField(grid(), (a11.array() * v.x.array() + a12.array() * v.y.array()).matrix()),
        ScalarField(grid(), (a12.array() * v.x.array() + a22.array() * v.y.array()).matrix()));
}

ScalarField TensorField::determinant() const {
    return ScalarField(grid(), (a11.array() * a22.array() - a12.array().square()).matrix());
}

std::pair<double, double> TensorField::eigenvalue_range() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int k = 0; k < a11.size(); ++k) {
        const double tr = a11[k] + a22[k];
        const double det = a11[k] * a22[k] - a12[k] * a12[k];
        const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
        lo = std::min(lo, tr / 2.0 - disc);
        hi = std::max(hi, tr / 2.0 + disc);
    }
    return {lo, hi};
}

struct LinearSystem::Impl {
    SparseOperator matrix;
    bool direct = true;
    double tolerance = 1e-10;
    Eigen::SparseLU<SparseOperator> lu;
    Eigen::BiCGSTAB<SparseOperator, Eigen::IncompleteLUT<double>> bicg;
};

LinearSystem::LinearSystem(SparseOperator matrix, const SolverOptions& opts, int grid_n)
    : impl_(std::make_shared<Impl>()) {
    impl_->matrix = std::move(matrix);
    impl_->matrix.makeCompressed();
    impl_->direct = grid_n <= opts.max_direct_n;
    impl_->tolerance = opts.tolerance;
    if (impl_->direct) {
        impl_->lu.compute(impl_->matrix);
        if (impl_->lu.info() != Eigen::Success) {
            throw std::runtime_error("LinearSystem: sparse LU factorization failed");
        }
    } else {
        impl_->bicg.setTolerance(opts.tolerance);
        impl_->bicg.setMaxIterations(20000);
        impl_->bicg.compute(impl_->matrix);
        if (impl_->bicg.info() != Eigen::Success) {
            throw std::runtime_error("LinearSystem: preconditioner setup failed");
        }
    }
}

Eigen::VectorXd LinearSystem::solve(const Eigen::VectorXd& rhs) const {
    if (impl_->direct) {
        Eigen::VectorXd u = impl_->lu.solve(rhs);
        if (impl_->lu.info() != Eigen::Success) {
            throw std::runtime_error("LinearSystem: direct solve failed");
        }
        return u;
    }
    Eigen::VectorXd u = impl_->bicg.solve(rhs);
    if (impl_->bicg.info() != Eigen::Success) {
        throw std::runtime_error("LinearSystem: BiCGSTAB did not converge (error " +
                                 std::to_string(impl_->bicg.error()) + ")");
    }
    return u;
}

SparseOperator with_dirichlet_rows(const Grid& grid, const SparseOperator& op) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(op.nonZeros()) + grid.node_count());
    for (int k = 0; k < op.outerSize(); ++k) {
        for (SparseOperator::InnerIterator it(op, k); it; ++it) {
            if (!grid.is_boundary(static_cast<int>(it.row()))) {
                trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                                  it.value());
            }
        }
    }
    for (int k = 0; k < grid.node_count(); ++k) {
        if (grid.is_boundary(k)) trip.emplace_back(k, k, 1.0);
    }
    SparseOperator out(op.rows(), op.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

namespace {

SparseOperator five_point_laplacian(const Grid& grid) {
    const int m = grid.node_count();
    const double ih2 = 1.0 / (grid.h() * grid.h());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(5) * m);
    for (int ix = 0; ix <= grid.n(); ++ix) {
        for (int iy = 0; iy <= grid.n(); ++iy) {
            const int k = grid.index(ix, iy);
            if (grid.is_boundary(ix, iy)) {
                trip.emplace_back(k, k, 1.0);
                continue;
            }
            trip.emplace_back(k, k, -4.0 * ih2);
            trip.emplace_back(k, grid.index(ix - 1, iy), ih2);
            trip.emplace_back(k, grid.index(ix + 1, iy), ih2);
            trip.emplace_back(k, grid.index(ix, iy - 1), ih2);
            trip.emplace_back(k, grid.index(ix, iy + 1), ih2);
        }
    }
    SparseOperator out(m, m);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

Eigen::VectorXd dirichlet_rhs(const Grid& grid, const ScalarField& rhs,
                              const ScalarField& boundary) {
    Eigen::VectorXd b = rhs.values();
    for (int k = 0; k < grid.node_count(); ++k) {
        if (grid.is_boundary(k)) b[k] = boundary[k];
    }
    return b;
}

}  // namespace

PoissonSolver::PoissonSolver(const Grid& grid, const SolverOptions& opts)
    : grid_(grid),
      system_(std::make_unique<LinearSystem>(five_point_laplacian(grid), opts, grid.n())) {}

ScalarField PoissonSolver::solve(const ScalarField& rhs, const ScalarField& boundary) const {
    require_same_grid(grid_, rhs.grid(), "PoissonSolver::solve");
    require_same_grid(grid_, boundary.grid(), "PoissonSolver::solve");
    if (!rhs.all_finite() || !boundary.all_finite()) {
        throw std::invalid_argument("PoissonSolver::solve: non-finite input");
    }
    return ScalarField(grid_, system_->solve(dirichlet_rhs(grid_, rhs, boundary)));
}

SparseOperator divergence_form_operator(const DerivativeOps& ops, const TensorField& coeff) {
    require_same_grid(ops.grid(), coeff.grid(), "divergence_form_operator");
    const SparseOperator c11dx = coeff.a11.values().asDiagonal() * ops.dx();
    const SparseOperator c12dy = coeff.a12.values().asDiagonal() * ops.dy();
    const SparseOperator c12dx = coeff.a12.values().asDiagonal() * ops.dx();
    const SparseOperator c22dy = coeff.a22.values().asDiagonal() * ops.dy();
    const SparseOperator fx = c11dx + c12dy;
    const SparseOperator fy = c12dx + c22dy;
    SparseOperator out = ops.dx() * fx;
    out = out + SparseOperator(ops.dy() * fy);
    return out;
}

GeneralEllipticSolver::GeneralEllipticSolver(const DerivativeOps& ops, const TensorField& coeff,
                                             const SolverOptions& opts, double kappa)
    : grid_(ops.grid()) {
    if (!coeff.a11.all_finite() || !coeff.a12.all_finite() || !coeff.a22.all_finite()) {
        throw std::invalid_argument("GeneralEllipticSolver: non-finite coefficient");
    }
    const auto [lo, hi] = coeff.eigenvalue_range();
    if (lo < 1.0 / kappa || hi > kappa) {
        throw std::invalid_argument("GeneralEllipticSolver: coefficient not uniformly elliptic "
                                    "(eigenvalues in [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }
    system_ = std::make_unique<LinearSystem>(
        with_dirichlet_rows(grid_, divergence_form_operator(ops, coeff)), opts, grid_.n());
}

ScalarField GeneralEllipticSolver::solve(const ScalarField& boundary) const {
    return solve(boundary, ScalarField::zero(grid_));
}

ScalarField GeneralEllipticSolver::solve(const ScalarField& boundary,
                                         const ScalarField& rhs) const {
    require_same_grid(grid_, boundary.grid(), "GeneralEllipticSolver::solve");
    require_same_grid(grid_, rhs.grid(), "GeneralEllipticSolver::solve");
    return ScalarField(grid_, system_->solve(dirichlet_rhs(grid_, rhs, boundary)));
}

}  // namespace pdt
