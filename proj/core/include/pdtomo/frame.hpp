#ifndef PDTOMO_FRAME_HPP
#define PDTOMO_FRAME_HPP

#include <optional>
#include <vector>

#include "pdtomo/forward.hpp"
#include "pdtomo/noise.hpp"

namespace pdt {

/// Gram-Schmidt frame data for one pair of solutions (a, b) of a power-density
/// set. With H the 2x2 submatrix (H_aa, H_ab, H_bb):
///   d   = sqrt(H_aa H_bb - H_ab^2)
///   T   = [[H_aa^{-1/2}, 0], [-H_ab H_aa^{-1/2} d^{-1}, H_aa^{1/2} d^{-1}]]
/// so that T^T T = H^{-1} nodewise. V fields use the closed forms
///   V11 = grad log H_aa^{-1/2},  V12 = 0,
///   V21 = -(H_aa/d) grad(H_ab/H_aa),  V22 = grad log(H_aa^{1/2} d^{-1}),
/// and N = grad log d (= half the gradient of log det H).
struct FrameData {
    ScalarField h11, h12, h22;      // the pair's H entries
    ScalarField d;                  // floored at floor_eps before divisions
    ScalarField t11, t21, t22;      // lower-triangular transfer entries
    VectorField v11, v21, v22;      // v12 is identically zero
    VectorField v12a;               // antisymmetric part (V12 - V21)/2 = -V21/2
    VectorField n_field;            // N = grad log d
    std::vector<int> floored_nodes; // nodes where a positivity floor triggered

    const Grid& grid() const { return d.grid(); }
};

/// Builds the frame for solutions (i, j) of H. Nonpositive H_ii or d values
/// are floored at floor_eps and recorded in floored_nodes.
FrameData gram_schmidt_frame(const PowerDensitySet& H, int i, int j, const DerivativeOps& ops,
                             double floor_eps = 1e-14);

/// Data vector fields of the algebraic anisotropy equation Asq X = Y built
/// from a 3-solution set arranged as pairs (0,1) and (1,2):
///   X = -(H22/2) (d1^{-1} grad(H12/H22) + d2^{-1} grad(H23/H22))
///   Y = -(1/2) J grad(log d2 - log d1),   J = [[0,-1],[1,0]]
struct DataVectorFields {
    VectorField X;
    VectorField Y;
    ScalarField inner_xy;  // X . Y nodewise

    const Grid& grid() const { return inner_xy.grid(); }
};

DataVectorFields xy_fields(const PowerDensitySet& H, const FrameData& f1, const FrameData& f2,
                           const DerivativeOps& ops);

/// X/Y fields for two solution pairs (a1, b1) and (a2, b2) of one set, via the
/// frame-angle difference route:
///   cos(dtheta) = t11' t11'' H_{a1 a2},
///   sin(dtheta) = t11'' (t21' H_{a1 a2} + t22' H_{b1 a2}),
///   X = cos grad(sin) - sin grad(cos) - V12a'' + V12a',
///   Y = -(1/2) J grad(log d'' - log d').
/// Works for any arrangement, in particular four distinct solutions; with the
/// shared-solution arrangement (0,1),(1,2) it agrees with xy_fields up to
/// discretization error.
DataVectorFields xy_fields_pairs(const PowerDensitySet& H, int a1, int b1, const FrameData& f1,
                                 int a2, int b2, const FrameData& f2, const DerivativeOps& ops);

struct AdmissibilityThresholds {
    double c0 = 1e-6;  // lower bound required of min d1, min d2
    double y0 = 1e-8;  // lower bound required of min |Y|
};

struct AdmissibilityReport {
    double min_d1 = 0.0;
    double min_d2 = 0.0;
    double min_y_norm = 0.0;
    bool cond1_ok = false;  // min(d1, d2) >= c0
    bool cond2_ok = false;  // min |Y| >= y0
    int floored_nodes = 0;

    bool ok() const { return cond1_ok && cond2_ok; }
};

AdmissibilityReport admissibility(const FrameData& f1, const FrameData& f2,
                                  const DataVectorFields& D,
                                  const AdmissibilityThresholds& thresholds = {});

/// Convenience: frames for pairs (0,1), (1,2) of a 3-solution set plus X/Y.
struct TripletData {
    FrameData f1;
    FrameData f2;
    DataVectorFields D;
};

TripletData triplet_data(const PowerDensitySet& H, const DerivativeOps& ops,
                         double floor_eps = 1e-14);

}  // namespace pdt

#endif
