#ifndef PDTOMO_ANISOTROPY_HPP
#define PDTOMO_ANISOTROPY_HPP

#include <vector>

#include "pdtomo/conductivity.hpp"
#include "pdtomo/frame.hpp"

namespace pdt {

/// Reconstructed (xi, zeta) with a node mask. Masked nodes carry the
/// isotropic placeholder (1, 0), are excluded from error metrics and are
/// never filled in by interpolation. The outermost grid ring is always
/// masked: the data fields there depend on one-sided stencils of quantities
/// that are themselves one-sided near the edge, and the pointwise inversion
/// is not reliable on it.
struct MaskedAnisotropy {
    AnisotropyXiZeta fields;
    std::vector<std::uint8_t> mask;  // 1 = masked
    int masked_count = 0;
    int negative_xi_count = 0;  // masked because reconstructed xi was <= 0
};

struct ReconOptions {
    /// Nodes with |X.Y| (pointwise) or det Xi (least squares) below
    /// rel_threshold times the field maximum are masked.
    double rel_threshold = 1e-10;
};

/// Pointwise inversion of Asq X = Y:
///   xi   = (X.Y)^{-1} (y1^2 + x2^2)
///   zeta = (X.Y)^{-1} (y1 y2 - x1 x2)
MaskedAnisotropy reconstruct_pointwise(const DataVectorFields& D, const ReconOptions& opts = {});

/// Least-squares inversion over p data-field sets via the 2x2 normal system
///   Xi [xi, zeta]^T = [sum_j X_j.Y_j, 0]^T,
///   Xi = sum_j [[x1^2 + y2^2, x1 x2 - y1 y2], [x1 x2 - y1 y2, x2^2 + y1^2]],
///   (xi, zeta) = (det Xi)^{-1} (sum_j X_j.Y_j) (Xi_22, -Xi_21).
/// With p = 1 this delegates to reconstruct_pointwise, to which it is
/// algebraically identical.
MaskedAnisotropy reconstruct_least_squares(const std::vector<DataVectorFields>& Ds,
                                           const ReconOptions& opts = {});

}  // namespace pdt

#endif
