#include "pdtomo/conductivity.hpp"

namespace pdt {

AnisotropyXiZeta::AnisotropyXiZeta(ScalarField xi_field, ScalarField zeta_field)
    : xi(std::move(xi_field)), zeta(std::move(zeta_field)) {
    require_same_grid(xi.grid(), zeta.grid(), "AnisotropyXiZeta");
    if ((xi.array() <= 0.0).any()) {
        throw std::invalid_argument("AnisotropyXiZeta: xi must be positive everywhere");
    }
}

AnisotropyXiZeta AnisotropyXiZeta::isotropic(const Grid& grid) {
    return AnisotropyXiZeta(ScalarField::constant(grid, 1.0), ScalarField::zero(grid));
}

TensorField AnisotropyXiZeta::matrix() const {
    return TensorField(xi, zeta,
                       ScalarField(grid(), ((1.0 + zeta.array().square()) / xi.array()).matrix()));
}

TensorField AnisotropyXiZeta::inverse_matrix() const {
    return TensorField(ScalarField(grid(), ((1.0 + zeta.array().square()) / xi.array()).matrix()),
                       ScalarField(grid(), (-zeta.array()).matrix()), xi);
}

AnisotropySqrt::AnisotropySqrt(ScalarField lambda_field, ScalarField mu_field)
    : lambda(std::move(lambda_field)), mu(std::move(mu_field)) {
    require_same_grid(lambda.grid(), mu.grid(), "AnisotropySqrt");
    if ((lambda.array() <= 0.0).any()) {
        throw std::invalid_argument("AnisotropySqrt: lambda must be positive everywhere");
    }
}

TensorField AnisotropySqrt::matrix() const {
    return TensorField(lambda, mu,
                       ScalarField(grid(), ((1.0 + mu.array().square()) / lambda.array()).matrix()));
}

TensorField AnisotropySqrt::inverse_matrix() const {
    return TensorField(ScalarField(grid(), ((1.0 + mu.array().square()) / lambda.array()).matrix()),
                       ScalarField(grid(), (-mu.array()).matrix()), lambda);
}

AnisotropySqrt sqrt_of_anisotropy(const AnisotropyXiZeta& a) {
    const Eigen::ArrayXd xi = a.xi.array();
    const Eigen::ArrayXd zeta = a.zeta.array();
    const Eigen::ArrayXd s = (xi / (zeta.square() + (1.0 + xi).square())).sqrt();
    return AnisotropySqrt(ScalarField(a.grid(), ((1.0 + xi) * s).matrix()),
                          ScalarField(a.grid(), (zeta * s).matrix()));
}

ConductivityField::ConductivityField(ScalarField det_sqrt_field, AnisotropyXiZeta anisotropy,
                                     double kappa_bound)
    : det_sqrt(std::move(det_sqrt_field)), aniso(std::move(anisotropy)), kappa0(kappa_bound) {
    require_same_grid(det_sqrt.grid(), aniso.grid(), "ConductivityField");
    if ((det_sqrt.array() <= 0.0).any()) {
        throw std::invalid_argument("ConductivityField: det_sqrt must be positive");
    }
}

TensorField assemble_tensor(const ConductivityField& c) {
    const TensorField a2 = c.aniso.matrix();
    const Eigen::ArrayXd w = c.det_sqrt.array();
    TensorField gamma(ScalarField(c.grid(), (w * a2.a11.array()).matrix()),
                      ScalarField(c.grid(), (w * a2.a12.array()).matrix()),
                      ScalarField(c.grid(), (w * a2.a22.array()).matrix()));
    const auto [lo, hi] = gamma.eigenvalue_range();
    if (lo < 1.0 / c.kappa0 || hi > c.kappa0) {
        throw std::invalid_argument(
            "assemble_tensor: ellipticity bound violated, eigenvalues in [" + std::to_string(lo) +
            ", " + std::to_string(hi) + "] vs kappa0 = " + std::to_string(c.kappa0));
    }
    return gamma;
}

}  // namespace pdt
