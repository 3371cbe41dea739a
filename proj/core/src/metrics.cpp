#include "pdtomo/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace pdt {

namespace {

ErrorPair errors_with(const ScalarField& rec, const ScalarField& truth,
                      const std::vector<std::uint8_t>& excluded) {
    double diff2 = 0.0, truth2 = 0.0, diff_max = 0.0, truth_max = 0.0;
    int used = 0;
    for (int k = 0; k < rec.size(); ++k) {
        if (excluded[k]) continue;
        ++used;
        const double e = rec[k] - truth[k];
        diff2 += e * e;
        truth2 += truth[k] * truth[k];
        diff_max = std::max(diff_max, std::abs(e));
        truth_max = std::max(truth_max, std::abs(truth[k]));
    }
    if (used == 0) {
        throw std::invalid_argument("compute_errors: all nodes are masked");
    }
    if (truth2 == 0.0 || truth_max == 0.0) {
        throw std::invalid_argument("compute_errors: truth vanishes on the unmasked set");
    }
    return ErrorPair{std::sqrt(diff2 / truth2), diff_max / truth_max};
}

}  // namespace

ErrorPair compute_errors(const ScalarField& rec, const ScalarField& truth,
                         const std::vector<std::uint8_t>* mask) {
    require_same_grid(rec.grid(), truth.grid(), "compute_errors");
    std::vector<std::uint8_t> excluded(rec.size(), 0);
    if (mask) {
        if (static_cast<int>(mask->size()) != rec.size()) {
            throw std::invalid_argument("compute_errors: mask size mismatch");
        }
        excluded = *mask;
    }
    return errors_with(rec, truth, excluded);
}

}  // namespace pdt
