#ifndef PDTOMO_DET_COUPLED_HPP
#define PDTOMO_DET_COUPLED_HPP

#include "pdtomo/conductivity.hpp"
#include "pdtomo/frame.hpp"

namespace pdt {

struct CoupledSolution {
    ScalarField u1;
    ScalarField u2;
    std::vector<int> floored_nodes;
};

/// Solves the strongly coupled divergence-form system
///   div(|H|^{1/2} H^{ji} Asq grad u_i) = 0, u_j = g_j on the boundary,
/// assembled block-monolithically from the same derivative compositions as
/// the forward solver, with |H|^{1/2} floored at floor_eps.
CoupledSolution solve_coupled(const AnisotropyXiZeta& a, const PowerDensitySet& H,
                              const ScalarField& g1_boundary, const ScalarField& g2_boundary,
                              const DerivativeOps& ops, const SolverOptions& opts = {},
                              double floor_eps = 1e-14);

/// Advection fields W_ip = H_qi |H|^{-1/2} grad(|H|^{1/2} H^{pq}) (sum over q)
/// of the non-divergence form; diagnostic companion of the coupled system.
struct AdvectionFields {
    VectorField w11, w12, w21, w22;
};

AdvectionFields advection_fields(const PowerDensitySet& H, const DerivativeOps& ops,
                                 double floor_eps = 1e-14);

/// Residual of the non-divergence form div(Asq grad u_i) + W_ip . Asq grad u_p
/// evaluated on a solution pair; near zero when the coupled solve succeeded.
std::pair<ScalarField, ScalarField> nondivergence_residual(const AnisotropyXiZeta& a,
                                                           const PowerDensitySet& H,
                                                           const CoupledSolution& sol,
                                                           const DerivativeOps& ops,
                                                           double floor_eps = 1e-14);

struct DetCoupledResult {
    ScalarField inv_det;   // reconstructed |A|^{-1}
    ScalarField det_sqrt;  // its reciprocal, |gamma|^{1/2}
    int nonpositive_nodes = 0;  // nodes where reconstructed |A|^{-1} <= 0
};

/// Determinant from the coupled solution via
///   grad |A|^{-1} = -|H|^{-1/2} (grad(|H|^{1/2} H^{pq}) . Asq grad u_p) grad u_q
/// followed by a Poisson solve with Dirichlet |A|^{-1} data.
DetCoupledResult reconstruct_inv_det(const AnisotropyXiZeta& a, const PowerDensitySet& H,
                                     const CoupledSolution& sol,
                                     const ScalarField& inv_det_boundary,
                                     const DerivativeOps& ops, const PoissonSolver& poisson,
                                     double floor_eps = 1e-14);

}  // namespace pdt

#endif
