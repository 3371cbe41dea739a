#include "pdtomo/anisotropy.hpp"

#include <cmath>

namespace pdt {

namespace {

void mask_boundary_ring(const Grid& g, std::vector<std::uint8_t>& mask) {
    for (int k = 0; k < g.node_count(); ++k) {
        if (g.is_boundary(k)) mask[k] = 1;
    }
}

MaskedAnisotropy finalize(const Grid& g, Eigen::VectorXd xi, Eigen::VectorXd zeta,
                          std::vector<std::uint8_t> mask) {
    int negative = 0;
    for (int k = 0; k < g.node_count(); ++k) {
        if (!mask[k] && !(xi[k] > 0.0 && std::isfinite(xi[k]) && std::isfinite(zeta[k]))) {
            mask[k] = 1;
            ++negative;
        }
        if (mask[k]) {
            xi[k] = 1.0;
            zeta[k] = 0.0;
        }
    }
    int count = 0;
    for (auto m : mask) count += m;
    return MaskedAnisotropy{
        AnisotropyXiZeta(ScalarField(g, std::move(xi)), ScalarField(g, std::move(zeta))),
        std::move(mask), count, negative};
}

}  // namespace

MaskedAnisotropy reconstruct_pointwise(const DataVectorFields& D, const ReconOptions& opts) {
    const Grid& g = D.grid();
    const Eigen::ArrayXd x1 = D.X.x.array();
    const Eigen::ArrayXd x2 = D.X.y.array();
    const Eigen::ArrayXd y1 = D.Y.x.array();
    const Eigen::ArrayXd y2 = D.Y.y.array();
    const Eigen::ArrayXd inner = D.inner_xy.array();

    const double cutoff = opts.rel_threshold * inner.abs().maxCoeff();
    std::vector<std::uint8_t> mask(g.node_count(), 0);
    mask_boundary_ring(g, mask);

    Eigen::VectorXd xi(g.node_count());
    Eigen::VectorXd zeta(g.node_count());
    for (int k = 0; k < g.node_count(); ++k) {
        if (std::abs(inner[k]) <= cutoff) {
            mask[k] = 1;
            xi[k] = 1.0;
            zeta[k] = 0.0;
            continue;
        }
        xi[k] = (y1[k] * y1[k] + x2[k] * x2[k]) / inner[k];
        zeta[k] = (y1[k] * y2[k] - x1[k] * x2[k]) / inner[k];
    }
    return finalize(g, std::move(xi), std::move(zeta), std::move(mask));
}

MaskedAnisotropy reconstruct_least_squares(const std::vector<DataVectorFields>& Ds,
                                           const ReconOptions& opts) {
    if (Ds.empty()) {
        throw std::invalid_argument("reconstruct_least_squares: no data fields given");
    }
    if (Ds.size() == 1) {
        return reconstruct_pointwise(Ds.front(), opts);
    }
    const Grid& g = Ds.front().grid();
    Eigen::ArrayXd xi11 = Eigen::ArrayXd::Zero(g.node_count());
    Eigen::ArrayXd xi21 = Eigen::ArrayXd::Zero(g.node_count());
    Eigen::ArrayXd xi22 = Eigen::ArrayXd::Zero(g.node_count());
    Eigen::ArrayXd rhs = Eigen::ArrayXd::Zero(g.node_count());
    for (const auto& D : Ds) {
        require_same_grid(g, D.grid(), "reconstruct_least_squares");
        const Eigen::ArrayXd x1 = D.X.x.array();
        const Eigen::ArrayXd x2 = D.X.y.array();
        const Eigen::ArrayXd y1 = D.Y.x.array();
        const Eigen::ArrayXd y2 = D.Y.y.array();
        xi11 += x1.square() + y2.square();
        xi21 += x1 * x2 - y1 * y2;
        xi22 += x2.square() + y1.square();
        rhs += D.inner_xy.array();
    }
    const Eigen::ArrayXd det = xi11 * xi22 - xi21.square();
    const double cutoff = opts.rel_threshold * det.maxCoeff();

    std::vector<std::uint8_t> mask(g.node_count(), 0);
    mask_boundary_ring(g, mask);
    Eigen::VectorXd xi(g.node_count());
    Eigen::VectorXd zeta(g.node_count());
    for (int k = 0; k < g.node_count(); ++k) {
        if (det[k] <= cutoff) {
            mask[k] = 1;
            xi[k] = 1.0;
            zeta[k] = 0.0;
            continue;
        }
        xi[k] = rhs[k] * xi22[k] / det[k];
        zeta[k] = -rhs[k] * xi21[k] / det[k];
    }
    return finalize(g, std::move(xi), std::move(zeta), std::move(mask));
}

}  // namespace pdt
