#ifndef PDTOMO_NOISE_HPP
#define PDTOMO_NOISE_HPP

#include <cstdint>

#include "pdtomo/forward.hpp"

namespace pdt {

/// Multiplicative noise model: H_noisy = H .* (1 + alpha/100 * smooth(r)),
/// r i.i.d. uniform on [-1, 1] per node per functional, smoothed with the
/// fixed 3x3 averaging kernel (all entries 1/9, replicate padding).
struct NoiseSpec {
    double alpha = 0.0;       // percent
    std::uint64_t seed = 0;
    std::uint64_t stream = 0; // extra split key, e.g. triplet index
};

/// Deterministic per-(seed, stream, i, j) noise; each (i, j) with i <= j gets
/// an independent stream, mirrored to (j, i). Symmetry is not re-enforced
/// afterwards.
PowerDensitySet add_noise(const PowerDensitySet& H, const NoiseSpec& spec);

/// Uniform [-1, 1] node field for the given stream key; exposed for tests.
ScalarField uniform_noise_field(const Grid& grid, std::uint64_t seed, std::uint64_t stream,
                                int i, int j);

/// 3x3 moving average with replicate padding; exposed for tests.
ScalarField smooth_3x3(const ScalarField& f);

}  // namespace pdt

#endif
