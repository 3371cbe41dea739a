#include "pdtomo/det_theta.hpp"

#include <cmath>

namespace pdt {

namespace {

// J v = (-v_y, v_x)
VectorField rot90(const VectorField& v) {
    return VectorField(ScalarField(v.grid(), (-v.y.array()).matrix()), v.x);
}

}  // namespace

VectorField lie_bracket(const AnisotropySqrt& a, const DerivativeOps& ops) {
    const Grid& g = a.grid();
    const Eigen::ArrayXd lam = a.lambda.array();
    const Eigen::ArrayXd mu = a.mu.array();
    const VectorField grad_lam = ops.gradient(a.lambda);
    const VectorField grad_mu = ops.gradient(a.mu);

    const Eigen::ArrayXd m1_12 = (1.0 + mu.square()) / lam;
    const Eigen::ArrayXd m1_22 = mu * m1_12 / lam;
    const Eigen::ArrayXd m2_22 = (mu.square() - 1.0) / lam;

    Eigen::ArrayXd bx = mu * grad_lam.x.array() + m1_12 * grad_lam.y.array() -
                        (lam * grad_mu.x.array() + mu * grad_mu.y.array());
    Eigen::ArrayXd by = m1_12 * grad_lam.x.array() + m1_22 * grad_lam.y.array() -
                        (mu * grad_mu.x.array() + m2_22 * grad_mu.y.array());
    return VectorField(ScalarField(g, bx.matrix()), ScalarField(g, by.matrix()));
}

VectorField theta_gradient_field(const AnisotropyXiZeta& a, const FrameData& frame,
                                 const DerivativeOps& ops) {
    require_same_grid(a.grid(), frame.grid(), "theta_gradient_field");
    const Grid& g = a.grid();
    const VectorField bracket = lie_bracket(sqrt_of_anisotropy(a), ops);
    const VectorField half_jn = rot90(frame.n_field);
    VectorField w(ScalarField(g, (0.5 * half_jn.x.array() + bracket.x.array()).matrix()),
                  ScalarField(g, (0.5 * half_jn.y.array() + bracket.y.array()).matrix()));
    const VectorField aw = a.inverse_matrix().apply(w);
    return VectorField(ScalarField(g, (frame.v12a.x.array() - aw.x.array()).matrix()),
                       ScalarField(g, (frame.v12a.y.array() - aw.y.array()).matrix()));
}

ScalarField reconstruct_theta(const AnisotropyXiZeta& a, const FrameData& frame,
                              const ScalarField& theta_boundary, const DerivativeOps& ops,
                              const PoissonSolver& poisson) {
    const VectorField G = theta_gradient_field(a, frame, ops);
    return poisson.solve(ops.divergence(G), theta_boundary);
}

ScalarField true_theta(const AnisotropyXiZeta& a, const ScalarField& u1,
                       const DerivativeOps& ops) {
    const VectorField s1 = sqrt_of_anisotropy(a).matrix().apply(ops.gradient(u1));
    Eigen::VectorXd th(u1.size());
    for (int k = 0; k < u1.size(); ++k) {
        th[k] = std::atan2(s1.y[k], s1.x[k]);
    }
    return ScalarField(u1.grid(), std::move(th));
}

DetThetaResult reconstruct_log_det(const ScalarField& theta, const AnisotropySqrt& a,
                                   const FrameData& frame, const ScalarField& log_det_boundary,
                                   const DerivativeOps& ops, const PoissonSolver& poisson) {
    const Grid& g = theta.grid();
    const TensorField A = a.matrix();
    const VectorField diff(
        ScalarField(g, (frame.v11.x.array() - frame.v22.x.array()).matrix()),
        ScalarField(g, (frame.v11.y.array() - frame.v22.y.array()).matrix()));
    const VectorField sum = frame.v21;  // V12 + V21 = V21 in the Gram-Schmidt frame
    const VectorField ad = A.apply(diff);
    const VectorField as = A.apply(sum);
    // F_c = U A (V11 - V22) + J U A (V12 + V21), U = diag(1, -1)
    const VectorField fc(ScalarField(g, (ad.x.array() + as.y.array()).matrix()),
                         ScalarField(g, (-ad.y.array() + as.x.array()).matrix()));
    const Eigen::ArrayXd c2 = (2.0 * theta.array()).cos();
    const Eigen::ArrayXd s2 = (2.0 * theta.array()).sin();
    const VectorField rotated(
        ScalarField(g, (c2 * fc.x.array() - s2 * fc.y.array()).matrix()),
        ScalarField(g, (c2 * fc.y.array() + s2 * fc.x.array()).matrix()));
    const VectorField grad_log = a.inverse_matrix().apply(rotated);
    ScalarField log_det = poisson.solve(ops.divergence(grad_log), log_det_boundary);
    ScalarField det_sqrt(g, log_det.array().exp().matrix());
    return DetThetaResult{std::move(log_det), std::move(det_sqrt)};
}

}  // namespace pdt
