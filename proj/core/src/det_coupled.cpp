#include "pdtomo/det_coupled.hpp"

#include <array>
#include <cmath>

namespace pdt {

namespace {

struct CoupledCoefficients {
    // c[j][i] multiplies Asq in block (j, i): |H|^{1/2} H^{ji} as scalar fields
    std::array<std::array<Eigen::ArrayXd, 2>, 2> c;
    Eigen::ArrayXd d;  // |H|^{1/2}, floored
    std::vector<int> floored;
};

CoupledCoefficients coupled_coefficients(const PowerDensitySet& H, double floor_eps) {
    CoupledCoefficients out;
    const Eigen::ArrayXd h11 = H.at(0, 0).array();
    const Eigen::ArrayXd h12 = H.at(0, 1).array();
    const Eigen::ArrayXd h22 = H.at(1, 1).array();
    Eigen::ArrayXd det = h11 * h22 - h12.square();
    for (int k = 0; k < det.size(); ++k) {
        if (det[k] < floor_eps) {
            det[k] = floor_eps;
            out.floored.push_back(k);
        }
    }
    out.d = det.sqrt();
    out.c[0][0] = h22 / out.d;
    out.c[0][1] = -h12 / out.d;
    out.c[1][0] = out.c[0][1];
    out.c[1][1] = h11 / out.d;
    return out;
}

}  // namespace

CoupledSolution solve_coupled(const AnisotropyXiZeta& a, const PowerDensitySet& H,
                              const ScalarField& g1_boundary, const ScalarField& g2_boundary,
                              const DerivativeOps& ops, const SolverOptions& opts,
                              double floor_eps) {
    const Grid& g = H.grid();
    require_same_grid(g, a.grid(), "solve_coupled");
    require_same_grid(g, ops.grid(), "solve_coupled");
    if (H.m() < 2) throw std::invalid_argument("solve_coupled: needs two solutions");

    CoupledCoefficients cc = coupled_coefficients(H, floor_eps);
    const TensorField a2 = a.matrix();
    const int m = g.node_count();

    std::vector<Eigen::Triplet<double>> trip;
    for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) {
            TensorField coeff(
                ScalarField(g, (cc.c[j][i] * a2.a11.array()).matrix()),
                ScalarField(g, (cc.c[j][i] * a2.a12.array()).matrix()),
                ScalarField(g, (cc.c[j][i] * a2.a22.array()).matrix()));
            if (!coeff.a11.all_finite() || !coeff.a12.all_finite() || !coeff.a22.all_finite()) {
                throw std::runtime_error("solve_coupled: non-finite block coefficient");
            }
            const SparseOperator block = divergence_form_operator(ops, coeff);
            for (int k = 0; k < block.outerSize(); ++k) {
                for (SparseOperator::InnerIterator it(block, k); it; ++it) {
                    if (g.is_boundary(static_cast<int>(it.row()))) continue;
                    trip.emplace_back(j * m + static_cast<int>(it.row()),
                                      i * m + static_cast<int>(it.col()), it.value());
                }
            }
        }
    }
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < m; ++k) {
            if (g.is_boundary(k)) trip.emplace_back(j * m + k, j * m + k, 1.0);
        }
    }
    SparseOperator big(2 * m, 2 * m);
    big.setFromTriplets(trip.begin(), trip.end());

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * m);
    for (int k = 0; k < m; ++k) {
        if (g.is_boundary(k)) {
            rhs[k] = g1_boundary[k];
            rhs[m + k] = g2_boundary[k];
        }
    }
    LinearSystem system(std::move(big), opts, g.n());
    const Eigen::VectorXd sol = system.solve(rhs);
    return CoupledSolution{ScalarField(g, sol.head(m)), ScalarField(g, sol.tail(m)),
                           std::move(cc.floored)};
}

AdvectionFields advection_fields(const PowerDensitySet& H, const DerivativeOps& ops,
                                 double floor_eps) {
    const Grid& g = H.grid();
    CoupledCoefficients cc = coupled_coefficients(H, floor_eps);
    const Eigen::ArrayXd h[2][2] = {{H.at(0, 0).array(), H.at(0, 1).array()},
                                    {H.at(0, 1).array(), H.at(1, 1).array()}};
    // grad(|H|^{1/2} H^{pq}) for each (p, q)
    std::array<std::array<VectorField, 2>, 2> gc = {
        {{ops.gradient(ScalarField(g, cc.c[0][0].matrix())),
          ops.gradient(ScalarField(g, cc.c[0][1].matrix()))},
         {ops.gradient(ScalarField(g, cc.c[1][0].matrix())),
          ops.gradient(ScalarField(g, cc.c[1][1].matrix()))}}};
    auto w_of = [&](int i, int p) {
        Eigen::ArrayXd wx = Eigen::ArrayXd::Zero(g.node_count());
        Eigen::ArrayXd wy = Eigen::ArrayXd::Zero(g.node_count());
        for (int q = 0; q < 2; ++q) {
            wx += h[q][i] / cc.d * gc[p][q].x.array();
            wy += h[q][i] / cc.d * gc[p][q].y.array();
        }
        return VectorField(ScalarField(g, wx.matrix()), ScalarField(g, wy.matrix()));
    };
    return AdvectionFields{w_of(0, 0), w_of(0, 1), w_of(1, 0), w_of(1, 1)};
}

std::pair<ScalarField, ScalarField> nondivergence_residual(const AnisotropyXiZeta& a,
                                                           const PowerDensitySet& H,
                                                           const CoupledSolution& sol,
                                                           const DerivativeOps& ops,
                                                           double floor_eps) {
    const Grid& g = H.grid();
    const TensorField a2 = a.matrix();
    const AdvectionFields W = advection_fields(H, ops, floor_eps);
    const VectorField flux1 = a2.apply(ops.gradient(sol.u1));
    const VectorField flux2 = a2.apply(ops.gradient(sol.u2));
    const VectorField* flux[2] = {&flux1, &flux2};
    const VectorField* w[2][2] = {{&W.w11, &W.w12}, {&W.w21, &W.w22}};
    std::array<ScalarField, 2> res = {ScalarField::zero(g), ScalarField::zero(g)};
    for (int i = 0; i < 2; ++i) {
        Eigen::ArrayXd r = ops.divergence(*flux[i]).array();
        for (int p = 0; p < 2; ++p) {
            r += w[i][p]->dot(*flux[p]).array();
        }
        res[i] = ScalarField(g, r.matrix());
    }
    return {std::move(res[0]), std::move(res[1])};
}

DetCoupledResult reconstruct_inv_det(const AnisotropyXiZeta& a, const PowerDensitySet& H,
                                     const CoupledSolution& sol,
                                     const ScalarField& inv_det_boundary,
                                     const DerivativeOps& ops, const PoissonSolver& poisson,
                                     double floor_eps) {
    const Grid& g = H.grid();
    CoupledCoefficients cc = coupled_coefficients(H, floor_eps);
    const TensorField a2 = a.matrix();
    const VectorField grad_u[2] = {ops.gradient(sol.u1), ops.gradient(sol.u2)};
    const VectorField a2_grad_u[2] = {a2.apply(grad_u[0]), a2.apply(grad_u[1])};

    Eigen::ArrayXd gx = Eigen::ArrayXd::Zero(g.node_count());
    Eigen::ArrayXd gy = Eigen::ArrayXd::Zero(g.node_count());
    for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
            const VectorField grad_c = ops.gradient(ScalarField(g, cc.c[p][q].matrix()));
            const Eigen::ArrayXd scal = grad_c.dot(a2_grad_u[p]).array() / cc.d;
            gx -= scal * grad_u[q].x.array();
            gy -= scal * grad_u[q].y.array();
        }
    }
    const VectorField G(ScalarField(g, gx.matrix()), ScalarField(g, gy.matrix()));
    ScalarField inv_det = poisson.solve(ops.divergence(G), inv_det_boundary);

    int nonpositive = 0;
    Eigen::VectorXd w(g.node_count());
    for (int k = 0; k < g.node_count(); ++k) {
        if (inv_det[k] <= 0.0) {
            ++nonpositive;
            w[k] = 1.0 / floor_eps;
        } else {
            w[k] = 1.0 / inv_det[k];
        }
    }
    return DetCoupledResult{std::move(inv_det), ScalarField(g, std::move(w)), nonpositive};
}

}  // namespace pdt
