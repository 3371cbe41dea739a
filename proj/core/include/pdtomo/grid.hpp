#ifndef PDTOMO_GRID_HPP
#define PDTOMO_GRID_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

namespace pdt {

/// Uniform (n+1)x(n+1) node grid on the square [-1,1]^2, spacing h = 2/n.
/// Nodes are indexed lexicographically with y fastest: k = ix*(n+1) + iy.
class Grid {
public:
    explicit Grid(int n);

    int n() const { return n_; }
    double h() const { return h_; }
    int nodes_per_side() const { return n_ + 1; }
    int node_count() const { return (n_ + 1) * (n_ + 1); }

    double x(int ix) const { return -1.0 + ix * h_; }
    double y(int iy) const { return -1.0 + iy * h_; }
    int index(int ix, int iy) const { return ix * (n_ + 1) + iy; }
    int ix_of(int k) const { return k / (n_ + 1); }
    int iy_of(int k) const { return k % (n_ + 1); }

    bool is_boundary(int ix, int iy) const {
        return ix == 0 || iy == 0 || ix == n_ || iy == n_;
    }
    bool is_boundary(int k) const { return is_boundary(ix_of(k), iy_of(k)); }

    bool operator==(const Grid& other) const { return n_ == other.n_; }
    bool operator!=(const Grid& other) const { return n_ != other.n_; }

private:
    int n_;
    double h_;
};

/// Nodal scalar values on a Grid, stored flat in the grid's node order.
class ScalarField {
public:
    ScalarField(const Grid& grid, Eigen::VectorXd values);

    static ScalarField zero(const Grid& grid);
    static ScalarField constant(const Grid& grid, double value);
    static ScalarField sample(const Grid& grid,
                              const std::function<double(double, double)>& f);

    const Grid& grid() const { return grid_; }
    const Eigen::VectorXd& values() const { return values_; }
    Eigen::VectorXd& values() { return values_; }
    Eigen::ArrayXd array() const { return values_.array(); }

    double operator()(int ix, int iy) const { return values_[grid_.index(ix, iy)]; }
    double& operator()(int ix, int iy) { return values_[grid_.index(ix, iy)]; }
    double operator[](int k) const { return values_[k]; }
    double& operator[](int k) { return values_[k]; }
    int size() const { return static_cast<int>(values_.size()); }

    bool all_finite() const { return values_.allFinite(); }

private:
    Grid grid_;
    Eigen::VectorXd values_;
};

/// Pair of scalar fields forming a nodal vector field (x and y components).
struct VectorField {
    ScalarField x;
    ScalarField y;

    VectorField(ScalarField vx, ScalarField vy);
    static VectorField zero(const Grid& grid);

    const Grid& grid() const { return x.grid(); }
    /// Pointwise Euclidean norm.
    ScalarField norm() const;
    /// Pointwise dot product with another vector field.
    ScalarField dot(const VectorField& other) const;
};

void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace pdt

#endif
