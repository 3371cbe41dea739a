#include "pdtomo/illumination.hpp"

#include <cmath>

namespace pdt {

ScalarField Illumination::sample(const Grid& grid) const {
    ScalarField f = ScalarField::sample(grid, trace);
    if (!f.all_finite()) {
        throw std::invalid_argument("Illumination '" + tag + "' is not finite on the grid");
    }
    return f;
}

std::vector<Illumination> triplet_standard() {
    return {
        {"x+y", [](double x, double y) { return x + y; }},
        {"y+0.1y^2", [](double, double y) { return y + 0.1 * y * y; }},
        {"-x+y", [](double x, double y) { return -x + y; }},
    };
}

std::vector<Illumination> triplet_harmonic() {
    return {
        {"x+y", [](double x, double y) { return x + y; }},
        {"y+0.1(y^2-x^2)", [](double x, double y) { return y + 0.1 * (y * y - x * x); }},
        {"-x+y", [](double x, double y) { return -x + y; }},
    };
}

std::vector<Illumination> pair_xy() {
    return {
        {"x", [](double x, double) { return x; }},
        {"y", [](double, double y) { return y; }},
    };
}

std::vector<Illumination> quad_standard() {
    return {
        {"x+y", [](double x, double y) { return x + y; }},
        {"y+0.1y^2", [](double, double y) { return y + 0.1 * y * y; }},
        {"-x+y", [](double x, double y) { return -x + y; }},
        {"-y-0.1x^2", [](double x, double y) { return -y - 0.1 * x * x; }},
    };
}

std::vector<std::array<Illumination, 3>> rotated_family(int p) {
    if (p < 1) {
        throw std::invalid_argument("rotated_family: p must be >= 1");
    }
    std::vector<std::array<Illumination, 3>> out;
    out.reserve(p);
    for (int j = 1; j <= p; ++j) {
        const double beta = 2.0 * M_PI * j / p;
        const double expo = 1.0 + static_cast<double>(j) / p;
        const double b1x = std::cos(beta), b1y = std::sin(beta);
        const double b2x = std::cos(beta + M_PI / 4.0), b2y = std::sin(beta + M_PI / 4.0);
        const double b3x = std::cos(beta + M_PI / 2.0), b3y = std::sin(beta + M_PI / 2.0);
        const std::string suffix = "[" + std::to_string(j) + "/" + std::to_string(p) + "]";
        out.push_back({
            Illumination{"g1" + suffix,
                         [b1x, b1y, expo](double x, double y) {
                             return std::pow(3.0 + x * b1x + y * b1y, expo);
                         }},
            Illumination{"g2" + suffix,
                         [b2x, b2y, expo](double x, double y) {
                             const double s = x * b2x + y * b2y;
                             return s + 0.01 * std::pow(2.0 + s, 1.0 + expo);
                         }},
            Illumination{"g3" + suffix,
                         [b3x, b3y, expo](double x, double y) {
                             return std::pow(3.0 + x * b3x + y * b3y, expo);
                         }},
        });
    }
    return out;
}

}  // namespace pdt
