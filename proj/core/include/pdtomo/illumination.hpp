#ifndef PDTOMO_ILLUMINATION_HPP
#define PDTOMO_ILLUMINATION_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "pdtomo/grid.hpp"

namespace pdt {

/// Dirichlet boundary condition for one diffusion solve. The trace function
/// is sampled on the whole grid; only boundary nodes enter the solve.
struct Illumination {
    std::string tag;
    std::function<double(double, double)> trace;

    ScalarField sample(const Grid& grid) const;
};

/// The three-illumination set used by the anisotropy experiments:
/// (x+y, y + 0.1 y^2, -x+y).
std::vector<Illumination> triplet_standard();

/// Corner-compatible variant with harmonic-polynomial traces:
/// (x+y, y + 0.1 (y^2 - x^2), -x+y). Same structure, but the solutions are
/// smooth at the square's corners, which the refinement studies need.
std::vector<Illumination> triplet_harmonic();

/// The two-illumination set (x, y) used by the determinant pipelines.
std::vector<Illumination> pair_xy();

/// Four distinct illuminations for the m = 4 arrangement with pairs
/// (g1, g2) and (g3, g4): (x+y, y + 0.1 y^2, -x+y, -y - 0.1 x^2).
/// Both pairs are positively oriented on identity-like backgrounds.
std::vector<Illumination> quad_standard();

/// Rotated power family, triplets j = 1..p:
///   g1j = (3 + r.b)^(1+j/p),           b = (cos beta, sin beta), beta = 2 pi j / p
///   g2j = r.b' + 0.01 (2 + r.b')^(2+j/p),   b' at beta + pi/4
///   g3j = (3 + r.b'')^(1+j/p),              b'' at beta + pi/2
std::vector<std::array<Illumination, 3>> rotated_family(int p);

}  // namespace pdt

#endif
