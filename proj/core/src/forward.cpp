#include "pdtomo/forward.hpp"

namespace pdt {

PowerDensitySet::PowerDensitySet(const Grid& grid, int m) : grid_(grid), m_(m) {
    if (m < 1) throw std::invalid_argument("PowerDensitySet: m must be >= 1");
    upper_.reserve(m * (m + 1) / 2);
    for (int i = 0; i < m * (m + 1) / 2; ++i) {
        upper_.push_back(ScalarField::zero(grid));
    }
}

int PowerDensitySet::slot(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= m_) throw std::out_of_range("PowerDensitySet: index out of range");
    // row-major upper triangle
    return i * m_ - i * (i - 1) / 2 + (j - i);
}

const ScalarField& PowerDensitySet::at(int i, int j) const { return upper_[slot(i, j)]; }
ScalarField& PowerDensitySet::at(int i, int j) { return upper_[slot(i, j)]; }

ForwardSolver::ForwardSolver(const ConductivityField& c, const DerivativeOps& ops,
                             const SolverOptions& opts)
    : ops_(&ops), solver_(ops, assemble_tensor(c), opts, c.kappa0) {}

ScalarField ForwardSolver::solve(const Illumination& g) const {
    return solver_.solve(g.sample(ops_->grid()));
}

std::vector<ScalarField> ForwardSolver::solve_all(const std::vector<Illumination>& gs) const {
    std::vector<ScalarField> us;
    us.reserve(gs.size());
    for (const auto& g : gs) us.push_back(solve(g));
    return us;
}

std::vector<ScalarField> solve_illuminations(const ConductivityField& c,
                                             const std::vector<Illumination>& gs,
                                             const DerivativeOps& ops,
                                             const SolverOptions& opts) {
    return ForwardSolver(c, ops, opts).solve_all(gs);
}

PowerDensitySet power_densities(const ConductivityField& c, const std::vector<ScalarField>& us,
                                const DerivativeOps& ops) {
    const int m = static_cast<int>(us.size());
    PowerDensitySet H(c.grid(), m);
    const TensorField gamma = assemble_tensor(c);
    std::vector<VectorField> grads;
    std::vector<VectorField> fluxes;
    grads.reserve(m);
    fluxes.reserve(m);
    for (const auto& u : us) {
        require_same_grid(c.grid(), u.grid(), "power_densities");
        grads.push_back(ops.gradient(u));
        fluxes.push_back(gamma.apply(grads.back()));
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const Eigen::ArrayXd hij = fluxes[i].dot(grads[j]).array();
            const Eigen::ArrayXd hji = fluxes[j].dot(grads[i]).array();
            H.at(i, j) = ScalarField(c.grid(), (0.5 * (hij + hji)).matrix());
        }
    }
    return H;
}

}  // namespace pdt
