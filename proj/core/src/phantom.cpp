#include "pdtomo/phantom.hpp"

#include <cmath>

#include "pdtomo/field_io.hpp"

namespace pdt {

double bump(double x, double y, double cx, double cy, double radius) {
    const double q = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (radius * radius);
    if (q >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - q));
}

namespace {

bool in_disk(double x, double y, double cx, double cy, double r) {
    return (x - cx) * (x - cx) + (y - cy) * (y - cy) < r * r;
}

ScalarField phantom_xi(const Grid& g) {
    return ScalarField::sample(g, [](double x, double y) {
        return 1.0 + 0.4 * bump(x, y, -0.25, -0.25, 0.55) - 0.25 * bump(x, y, 0.45, 0.4, 0.35);
    });
}

ScalarField phantom_zeta(const Grid& g) {
    return ScalarField::sample(g, [](double x, double y) {
        return 0.45 * bump(x, y, 0.3, -0.2, 0.6) - 0.35 * bump(x, y, -0.45, 0.45, 0.35);
    });
}

ScalarField det_sqrt_smooth(const Grid& g) {
    return ScalarField::sample(g, [](double x, double y) {
        return 1.0 + 0.8 * bump(x, y, 0.0, 0.15, 0.55) - 0.35 * bump(x, y, -0.45, -0.45, 0.35);
    });
}

ScalarField det_sqrt_rough(const Grid& g) {
    return ScalarField::sample(g, [](double x, double y) {
        if (in_disk(x, y, 0.0, 0.0, 0.5) || in_disk(x, y, 0.0, 0.78, 0.18)) return 2.0;
        return 1.0;
    });
}

}  // namespace

ConductivityField make_phantom(const std::string& name, const Grid& grid) {
    if (name == "identity") {
        return ConductivityField(ScalarField::constant(grid, 1.0),
                                 AnisotropyXiZeta::isotropic(grid));
    }
    if (name == "smooth") {
        return ConductivityField(det_sqrt_smooth(grid),
                                 AnisotropyXiZeta(phantom_xi(grid), phantom_zeta(grid)));
    }
    if (name == "rough") {
        return ConductivityField(det_sqrt_rough(grid),
                                 AnisotropyXiZeta(phantom_xi(grid), phantom_zeta(grid)));
    }
    throw std::invalid_argument("make_phantom: unknown phantom name '" + name + "'");
}

ConductivityField load_phantom_csv(const std::string& det_sqrt_path, const std::string& xi_path,
                                   const std::string& zeta_path, double kappa0) {
    ScalarField w = read_field_csv(det_sqrt_path);
    ScalarField xi = read_field_csv(xi_path);
    ScalarField zeta = read_field_csv(zeta_path);
    return ConductivityField(std::move(w), AnisotropyXiZeta(std::move(xi), std::move(zeta)),
                             kappa0);
}

}  // namespace pdt
