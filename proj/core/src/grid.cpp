#include "pdtomo/grid.hpp"

namespace pdt {

Grid::Grid(int n) : n_(n), h_(2.0 / n) {
    if (n < 4) {
        throw std::invalid_argument("Grid: n must be at least 4, got " + std::to_string(n));
    }
}

ScalarField::ScalarField(const Grid& grid, Eigen::VectorXd values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.node_count()) {
        throw std::invalid_argument("ScalarField: value count does not match grid");
    }
}

ScalarField ScalarField::zero(const Grid& grid) {
    return ScalarField(grid, Eigen::VectorXd::Zero(grid.node_count()));
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
    return ScalarField(grid, Eigen::VectorXd::Constant(grid.node_count(), value));
}

ScalarField ScalarField::sample(const Grid& grid,
                                const std::function<double(double, double)>& f) {
    Eigen::VectorXd v(grid.node_count());
    for (int ix = 0; ix <= grid.n(); ++ix) {
        for (int iy = 0; iy <= grid.n(); ++iy) {
            v[grid.index(ix, iy)] = f(grid.x(ix), grid.y(iy));
        }
    }
    return ScalarField(grid, std::move(v));
}

VectorField::VectorField(ScalarField vx, ScalarField vy) : x(std::move(vx)), y(std::move(vy)) {
    require_same_grid(x.grid(), y.grid(), "VectorField");
}

VectorField VectorField::zero(const Grid& grid) {
    return VectorField(ScalarField::zero(grid), ScalarField::zero(grid));
}

ScalarField VectorField::norm() const {
    return ScalarField(grid(), (x.array().square() + y.array().square()).sqrt().matrix());
}

ScalarField VectorField::dot(const VectorField& other) const {
    require_same_grid(grid(), other.grid(), "VectorField::dot");
    return ScalarField(grid(),
                       (x.array() * other.x.array() + y.array() * other.y.array()).matrix());
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
    if (a != b) {
        throw std::invalid_argument(std::string(context) + ": fields live on different grids");
    }
}

}  // namespace pdt
