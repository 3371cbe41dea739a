#ifndef PDTOMO_CONDUCTIVITY_HPP
#define PDTOMO_CONDUCTIVITY_HPP

#include "pdtomo/elliptic.hpp"
#include "pdtomo/grid.hpp"

namespace pdt {

/// Unit-determinant SPD anisotropy in the (xi, zeta) parameterization:
/// Asq = [[xi, zeta], [zeta, (1+zeta^2)/xi]], xi > 0.
struct AnisotropyXiZeta {
    ScalarField xi;
    ScalarField zeta;

    AnisotropyXiZeta(ScalarField xi_field, ScalarField zeta_field);
    static AnisotropyXiZeta isotropic(const Grid& grid);

    const Grid& grid() const { return xi.grid(); }
    /// Assembled Asq(xi, zeta); determinant is 1 identically by construction.
    TensorField matrix() const;
    /// Inverse of Asq, which by det = 1 is the adjugate.
    TensorField inverse_matrix() const;
};

/// Matrix square root of Asq in the analogous (lambda, mu) parameterization:
/// A = [[lambda, mu], [mu, (1+mu^2)/lambda]], lambda > 0, det A = 1.
struct AnisotropySqrt {
    ScalarField lambda;
    ScalarField mu;

    AnisotropySqrt(ScalarField lambda_field, ScalarField mu_field);

    const Grid& grid() const { return lambda.grid(); }
    TensorField matrix() const;
    TensorField inverse_matrix() const;
};

/// lambda = (1+xi) sqrt(xi / (zeta^2 + (1+xi)^2)),
/// mu     = zeta  sqrt(xi / (zeta^2 + (1+xi)^2)); squaring A(lambda, mu)
/// recovers Asq(xi, zeta).
AnisotropySqrt sqrt_of_anisotropy(const AnisotropyXiZeta& a);

/// Full conductivity gamma = det_sqrt * Asq(xi, zeta); det_sqrt = |gamma|^{1/2}.
struct ConductivityField {
    ScalarField det_sqrt;
    AnisotropyXiZeta aniso;
    double kappa0 = 8.0;  // declared ellipticity bound for gamma

    ConductivityField(ScalarField det_sqrt_field, AnisotropyXiZeta anisotropy,
                      double kappa_bound = 8.0);

    const Grid& grid() const { return det_sqrt.grid(); }
};

/// Per-node gamma matrices. Throws if xi <= 0 anywhere or the eigenvalues of
/// the assembled tensor leave [1/kappa0, kappa0].
TensorField assemble_tensor(const ConductivityField& c);

}  // namespace pdt

#endif
