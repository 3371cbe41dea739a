#ifndef PDTOMO_FORWARD_HPP
#define PDTOMO_FORWARD_HPP

#include <cstdint>
#include <vector>

#include "pdtomo/conductivity.hpp"
#include "pdtomo/illumination.hpp"
#include "pdtomo/operators.hpp"

namespace pdt {

/// Symmetric m x m matrix of power-density fields H_ij = gamma grad u_i . grad u_j.
/// Only the upper triangle (i <= j) is stored; (j, i) mirrors it.
class PowerDensitySet {
public:
    PowerDensitySet(const Grid& grid, int m);

    const Grid& grid() const { return grid_; }
    int m() const { return m_; }

    const ScalarField& at(int i, int j) const;
    ScalarField& at(int i, int j);

    double alpha = 0.0;     // applied noise level in percent
    std::uint64_t seed = 0; // rng seed of the applied noise
    std::vector<std::string> tags;

private:
    int slot(int i, int j) const;
    Grid grid_;
    int m_;
    std::vector<ScalarField> upper_;
};

/// Reusable divergence-form solver for a fixed conductivity: one
/// factorization, any number of Dirichlet solves.
class ForwardSolver {
public:
    ForwardSolver(const ConductivityField& c, const DerivativeOps& ops,
                  const SolverOptions& opts = {});

    ScalarField solve(const Illumination& g) const;
    std::vector<ScalarField> solve_all(const std::vector<Illumination>& gs) const;

private:
    const DerivativeOps* ops_;
    GeneralEllipticSolver solver_;
};

std::vector<ScalarField> solve_illuminations(const ConductivityField& c,
                                             const std::vector<Illumination>& gs,
                                             const DerivativeOps& ops,
                                             const SolverOptions& opts = {});

/// H_ij = (gamma grad u_i) . grad u_j with the module's derivative stencils,
/// symmetrized as (H_ij + H_ji)/2 to cancel stencil asymmetry.
PowerDensitySet power_densities(const ConductivityField& c, const std::vector<ScalarField>& us,
                                const DerivativeOps& ops);

}  // namespace pdt

#endif
