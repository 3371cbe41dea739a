#ifndef PDTOMO_DET_THETA_HPP
#define PDTOMO_DET_THETA_HPP

#include "pdtomo/conductivity.hpp"
#include "pdtomo/frame.hpp"

namespace pdt {

/// Column Lie bracket [A_2, A_1] of A(lambda, mu) in closed form:
/// M1(lambda, mu) grad lambda - M2(lambda, mu) grad mu with
///   M1 = [[mu, (1+mu^2)/lambda], [(1+mu^2)/lambda, mu (1+mu^2)/lambda^2]]
///   M2 = [[lambda, mu], [mu, (mu^2-1)/lambda]].
VectorField lie_bracket(const AnisotropySqrt& a, const DerivativeOps& ops);

/// Right-hand side of the angle gradient equation:
/// G = V12a - Asq^{-1} ( (1/2) J N + [A_2, A_1] ).
VectorField theta_gradient_field(const AnisotropyXiZeta& a, const FrameData& frame,
                                 const DerivativeOps& ops);

/// Frame angle from div G = lap theta with Dirichlet data.
ScalarField reconstruct_theta(const AnisotropyXiZeta& a, const FrameData& frame,
                              const ScalarField& theta_boundary, const DerivativeOps& ops,
                              const PoissonSolver& poisson);

/// Ground-truth frame angle: the direction of A grad u1 (equivalently of
/// gamma^{1/2} grad u1; the scalar factor does not change the angle).
ScalarField true_theta(const AnisotropyXiZeta& a, const ScalarField& u1,
                       const DerivativeOps& ops);

struct DetThetaResult {
    ScalarField log_det;   // reconstructed log |A|
    ScalarField det_sqrt;  // exp(log_det) = |gamma|^{1/2}
};

/// Determinant from the angle: F_c = U A (V11 - V22) + J U A (V12 + V21) with
/// U = diag(1, -1); grad log|A| = A^{-1} (cos 2 theta F_c + sin 2 theta J F_c);
/// Poisson solve of its divergence with Dirichlet log|A| data.
DetThetaResult reconstruct_log_det(const ScalarField& theta, const AnisotropySqrt& a,
                                   const FrameData& frame, const ScalarField& log_det_boundary,
                                   const DerivativeOps& ops, const PoissonSolver& poisson);

}  // namespace pdt

#endif
