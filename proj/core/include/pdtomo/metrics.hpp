#ifndef PDTOMO_METRICS_HPP
#define PDTOMO_METRICS_HPP

#include <cstdint>
#include <vector>

#include "pdtomo/grid.hpp"

namespace pdt {

struct ErrorPair {
    double rel_l2 = 0.0;
    double rel_linf = 0.0;
};

/// rel_l2 = ||rec - truth||_2 / ||truth||_2 and
/// rel_linf = max|rec - truth| / max|truth|, over unmasked nodes
/// (mask entries of 1 exclude a node). Throws if every node is masked or
/// the truth vanishes identically on the unmasked set.
ErrorPair compute_errors(const ScalarField& rec, const ScalarField& truth,
                         const std::vector<std::uint8_t>* mask = nullptr);

}  // namespace pdt

#endif
