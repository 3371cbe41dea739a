#ifndef PDTOMO_ELLIPTIC_HPP
#define PDTOMO_ELLIPTIC_HPP

#include <memory>

#include "pdtomo/operators.hpp"

namespace pdt {

struct SolverOptions {
    double tolerance = 1e-10;  // relative residual for the iterative fallback
    int max_direct_n = 256;    // grids up to this n use a sparse direct factorization
};

/// Symmetric 2x2 matrix field, one matrix per node: [[a11, a12], [a12, a22]].
struct TensorField {
    ScalarField a11;
    ScalarField a12;
    ScalarField a22;

    TensorField(ScalarField m11, ScalarField m12, ScalarField m22);
    static TensorField identity(const Grid& grid);
    static TensorField constant(const Grid& grid, double m11, double m12, double m22);

    const Grid& grid() const { return a11.grid(); }
    VectorField apply(const VectorField& v) const;
    ScalarField determinant() const;
    /// Smallest and largest eigenvalue over all nodes.
    std::pair<double, double> eigenvalue_range() const;
};

/// Shared Dirichlet-row linear solve: direct SparseLU for small grids,
/// ILU-preconditioned BiCGSTAB above max_direct_n. Deterministic either way.
class LinearSystem {
public:
    LinearSystem(SparseOperator matrix, const SolverOptions& opts, int grid_n);
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Dirichlet Poisson solver using the standard 5-point Laplacian at interior
/// nodes and identity rows carrying the boundary data.
class PoissonSolver {
public:
    explicit PoissonSolver(const Grid& grid, const SolverOptions& opts = {});

    /// Solves lap u = rhs at interior nodes, u = boundary on edge nodes.
    ScalarField solve(const ScalarField& rhs, const ScalarField& boundary) const;

    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    std::unique_ptr<LinearSystem> system_;
};

/// Divergence-form elliptic solver assembled literally as the composition
/// divergence(coeff * gradient(.)) of the DerivativeOps stencils, so that
/// identities built from the same operators cancel at the discrete level.
class GeneralEllipticSolver {
public:
    /// Throws if the coefficient eigenvalues leave [1/kappa, kappa].
    GeneralEllipticSolver(const DerivativeOps& ops, const TensorField& coeff,
                          const SolverOptions& opts = {}, double kappa = 1e8);

    /// Solves div(coeff grad u) = rhs at interior nodes with Dirichlet data.
    ScalarField solve(const ScalarField& boundary) const;
    ScalarField solve(const ScalarField& boundary, const ScalarField& rhs) const;

    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    std::unique_ptr<LinearSystem> system_;
};

/// Interior composition operator div(coeff grad .) without boundary rows.
SparseOperator divergence_form_operator(const DerivativeOps& ops, const TensorField& coeff);

/// Replaces boundary-node rows of op by identity rows.
SparseOperator with_dirichlet_rows(const Grid& grid, const SparseOperator& op);

}  // namespace pdt

#endif
