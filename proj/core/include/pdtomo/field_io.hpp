#ifndef PDTOMO_FIELD_IO_HPP
#define PDTOMO_FIELD_IO_HPP

#include <string>

#include "pdtomo/grid.hpp"

namespace pdt {

/// CSV layout: one row per grid line of constant x, n+1 comma-separated
/// values per row (y varying), i.e. rows follow the flat node order.
/// Values are printed with 17 significant digits so that read-back is
/// bit-exact for doubles.
void write_field_csv(const ScalarField& field, const std::string& path);

ScalarField read_field_csv(const std::string& path);

std::string format_full(double v);

}  // namespace pdt

#endif
