#ifndef PDTOMO_PHANTOM_HPP
#define PDTOMO_PHANTOM_HPP

#include <string>

#include "pdtomo/conductivity.hpp"

namespace pdt {

/// Analytic ground-truth coefficients on [-1,1]^2. Available names:
///   "smooth"   - C-infinity bump inclusions in all three fields
///   "rough"    - same anisotropy, piecewise-constant det_sqrt taking the
///                two values {1, 2} on disk inclusions
///   "identity" - gamma = I everywhere
/// Background values away from the inclusions are (det_sqrt, xi, zeta) = (1, 1, 0);
/// all inclusions are compactly supported in the interior.
ConductivityField make_phantom(const std::string& name, const Grid& grid);

/// Loads (det_sqrt, xi, zeta) from three CSV files written by write_field_csv.
ConductivityField load_phantom_csv(const std::string& det_sqrt_path, const std::string& xi_path,
                                   const std::string& zeta_path, double kappa0 = 8.0);

/// C-infinity bump: exp(1 - 1/(1 - q)) for q = r^2/radius^2 < 1, else 0.
double bump(double x, double y, double cx, double cy, double radius);

}  // namespace pdt

#endif
