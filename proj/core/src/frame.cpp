#include "pdtomo/frame.hpp"

#include <cmath>

namespace pdt {

namespace {

// Floors v at eps, appending offending node indices to flagged.
ScalarField floored(const ScalarField& v, double eps, std::vector<int>& flagged) {
    Eigen::VectorXd out = v.values();
    for (int k = 0; k < out.size(); ++k) {
        if (out[k] < eps) {
            out[k] = eps;
            flagged.push_back(k);
        }
    }
    return ScalarField(v.grid(), std::move(out));
}

}  // namespace

FrameData gram_schmidt_frame(const PowerDensitySet& H, int i, int j, const DerivativeOps& ops,
                             double floor_eps) {
    const Grid& g = H.grid();
    std::vector<int> flagged;
    const ScalarField haa = floored(H.at(i, i), floor_eps, flagged);
    const ScalarField hbb = floored(H.at(j, j), floor_eps, flagged);
    const ScalarField& hab = H.at(i, j);

    const Eigen::ArrayXd det = haa.array() * hbb.array() - hab.array().square();
    ScalarField d = floored(ScalarField(g, det.max(0.0).sqrt().matrix()), floor_eps, flagged);

    const Eigen::ArrayXd sqrt_haa = haa.array().sqrt();
    ScalarField t11(g, sqrt_haa.inverse().matrix());
    ScalarField t21(g, (-hab.array() / (sqrt_haa * d.array())).matrix());
    ScalarField t22(g, (sqrt_haa / d.array()).matrix());

    // closed-form V fields of the Gram-Schmidt transfer
    VectorField v11 = ops.gradient(ScalarField(g, (-0.5 * haa.array().log()).matrix()));
    VectorField grad_ratio = ops.gradient(ScalarField(g, (hab.array() / haa.array()).matrix()));
    const Eigen::ArrayXd neg_haa_over_d = -haa.array() / d.array();
    VectorField v21(ScalarField(g, (neg_haa_over_d * grad_ratio.x.array()).matrix()),
                    ScalarField(g, (neg_haa_over_d * grad_ratio.y.array()).matrix()));
    VectorField v22 =
        ops.gradient(ScalarField(g, (0.5 * haa.array().log() - d.array().log()).matrix()));
    VectorField v12a(ScalarField(g, (-0.5 * v21.x.array()).matrix()),
                     ScalarField(g, (-0.5 * v21.y.array()).matrix()));
    VectorField n_field = ops.gradient(ScalarField(g, d.array().log().matrix()));

    return FrameData{haa,
                     hab,
                     hbb,
                     std::move(d),
                     std::move(t11),
                     std::move(t21),
                     std::move(t22),
                     std::move(v11),
                     std::move(v21),
                     std::move(v22),
                     std::move(v12a),
                     std::move(n_field),
                     std::move(flagged)};
}

DataVectorFields xy_fields(const PowerDensitySet& H, const FrameData& f1, const FrameData& f2,
                           const DerivativeOps& ops) {
    if (H.m() < 3) {
        throw std::invalid_argument("xy_fields: needs a 3-solution power-density set");
    }
    const Grid& g = H.grid();
    const Eigen::ArrayXd h22 = f2.h11.array();  // H_22 is the leading entry of pair (1,2)
    const VectorField grad_a =
        ops.gradient(ScalarField(g, (H.at(0, 1).array() / h22).matrix()));
    const VectorField grad_b =
        ops.gradient(ScalarField(g, (H.at(1, 2).array() / h22).matrix()));
    const Eigen::ArrayXd half_h22 = 0.5 * h22;
    const Eigen::ArrayXd inv_d1 = f1.d.array().inverse();
    const Eigen::ArrayXd inv_d2 = f2.d.array().inverse();
    VectorField X(
        ScalarField(g, (-half_h22 * (inv_d1 * grad_a.x.array() + inv_d2 * grad_b.x.array()))
                           .matrix()),
        ScalarField(g, (-half_h22 * (inv_d1 * grad_a.y.array() + inv_d2 * grad_b.y.array()))
                           .matrix()));

    const VectorField grad_logratio =
        ops.gradient(ScalarField(g, (f2.d.array().log() - f1.d.array().log()).matrix()));
    // Y = -1/2 J grad(...) with J = [[0,-1],[1,0]]: components (gy/2, -gx/2)
    VectorField Y(ScalarField(g, (0.5 * grad_logratio.y.array()).matrix()),
                  ScalarField(g, (-0.5 * grad_logratio.x.array()).matrix()));

    ScalarField inner = X.dot(Y);
    return DataVectorFields{std::move(X), std::move(Y), std::move(inner)};
}

DataVectorFields xy_fields_pairs(const PowerDensitySet& H, int a1, int b1, const FrameData& f1,
                                 int a2, int /*b2*/, const FrameData& f2,
                                 const DerivativeOps& ops) {
    // the second pair's second solution enters only through its frame f2
    const Grid& g = H.grid();
    const Eigen::ArrayXd m11 = H.at(a1, a2).array();
    const Eigen::ArrayXd m21 = H.at(b1, a2).array();
    ScalarField cosd(g, (f1.t11.array() * f2.t11.array() * m11).matrix());
    ScalarField sind(g,
                     (f2.t11.array() * (f1.t21.array() * m11 + f1.t22.array() * m21)).matrix());
    const VectorField gsin = ops.gradient(sind);
    const VectorField gcos = ops.gradient(cosd);
    const Eigen::ArrayXd dtx = cosd.array() * gsin.x.array() - sind.array() * gcos.x.array();
    const Eigen::ArrayXd dty = cosd.array() * gsin.y.array() - sind.array() * gcos.y.array();
    VectorField X(ScalarField(g, (dtx - f2.v12a.x.array() + f1.v12a.x.array()).matrix()),
                  ScalarField(g, (dty - f2.v12a.y.array() + f1.v12a.y.array()).matrix()));

    const VectorField grad_logratio =
        ops.gradient(ScalarField(g, (f2.d.array().log() - f1.d.array().log()).matrix()));
    VectorField Y(ScalarField(g, (0.5 * grad_logratio.y.array()).matrix()),
                  ScalarField(g, (-0.5 * grad_logratio.x.array()).matrix()));

    ScalarField inner = X.dot(Y);
    return DataVectorFields{std::move(X), std::move(Y), std::move(inner)};
}

AdmissibilityReport admissibility(const FrameData& f1, const FrameData& f2,
                                  const DataVectorFields& D,
                                  const AdmissibilityThresholds& thresholds) {
    AdmissibilityReport rep;
    rep.min_d1 = f1.d.values().minCoeff();
    rep.min_d2 = f2.d.values().minCoeff();
    rep.min_y_norm = D.Y.norm().values().minCoeff();
    rep.cond1_ok = std::min(rep.min_d1, rep.min_d2) >= thresholds.c0;
    rep.cond2_ok = rep.min_y_norm >= thresholds.y0;
    rep.floored_nodes =
        static_cast<int>(f1.floored_nodes.size() + f2.floored_nodes.size());
    return rep;
}

TripletData triplet_data(const PowerDensitySet& H, const DerivativeOps& ops, double floor_eps) {
    FrameData f1 = gram_schmidt_frame(H, 0, 1, ops, floor_eps);
    FrameData f2 = gram_schmidt_frame(H, 1, 2, ops, floor_eps);
    DataVectorFields D = xy_fields(H, f1, f2, ops);
    return TripletData{std::move(f1), std::move(f2), std::move(D)};
}

}  // namespace pdt
