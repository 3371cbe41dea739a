#include "pdtomo/noise.hpp"

#include <algorithm>
#include <random>

namespace pdt {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream, int i, int j) {
    std::uint64_t k = splitmix64(seed);
    k = splitmix64(k ^ (stream + 0x51ed2701ULL));
    k = splitmix64(k ^ (static_cast<std::uint64_t>(i + 1) << 32 |
                        static_cast<std::uint64_t>(j + 1)));
    return k;
}

}  // namespace

ScalarField uniform_noise_field(const Grid& grid, std::uint64_t seed, std::uint64_t stream,
                                int i, int j) {
    std::mt19937_64 engine(stream_key(seed, stream, i, j));
    Eigen::VectorXd v(grid.node_count());
    for (int k = 0; k < grid.node_count(); ++k) {
        // top 53 bits -> [0, 1), mapped to [-1, 1); engine output is portable
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        v[k] = 2.0 * u - 1.0;
    }
    return ScalarField(grid, std::move(v));
}

ScalarField smooth_3x3(const ScalarField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    Eigen::VectorXd out(g.node_count());
    for (int ix = 0; ix <= n; ++ix) {
        for (int iy = 0; iy <= n; ++iy) {
            double acc = 0.0;
            for (int dx = -1; dx <= 1; ++dx) {
                for (int dy = -1; dy <= 1; ++dy) {
                    const int jx = std::clamp(ix + dx, 0, n);
                    const int jy = std::clamp(iy + dy, 0, n);
                    acc += f(jx, jy);
                }
            }
            out[g.index(ix, iy)] = acc / 9.0;
        }
    }
    return ScalarField(g, std::move(out));
}

PowerDensitySet add_noise(const PowerDensitySet& H, const NoiseSpec& spec) {
    if (spec.alpha < 0.0) {
        throw std::invalid_argument("add_noise: alpha must be nonnegative");
    }
    PowerDensitySet out = H;
    out.alpha = spec.alpha;
    out.seed = spec.seed;
    if (spec.alpha == 0.0) return out;
    const double scale = spec.alpha / 100.0;
    for (int i = 0; i < H.m(); ++i) {
        for (int j = i; j < H.m(); ++j) {
            const ScalarField r =
                smooth_3x3(uniform_noise_field(H.grid(), spec.seed, spec.stream, i, j));
            out.at(i, j) = ScalarField(
                H.grid(), (H.at(i, j).array() * (1.0 + scale * r.array())).matrix());
        }
    }
    return out;
}

}  // namespace pdt
