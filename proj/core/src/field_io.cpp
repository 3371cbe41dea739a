#include "pdtomo/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace pdt {

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv(const ScalarField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    const Grid& g = field.grid();
    for (int ix = 0; ix <= g.n(); ++ix) {
        for (int iy = 0; iy <= g.n(); ++iy) {
            if (iy) out << ',';
            out << format_full(field(ix, iy));
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

ScalarField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.c_str();
        char* end = nullptr;
        while (*p) {
            double v = std::strtod(p, &end);
            if (end == p) {
                throw std::runtime_error("malformed CSV value in " + path);
            }
            row.push_back(v);
            p = end;
            if (*p == ',') ++p;
        }
        rows.push_back(std::move(row));
    }
    const int side = static_cast<int>(rows.size());
    if (side < 5) {
        throw std::runtime_error("CSV field too small in " + path);
    }
    Grid grid(side - 1);
    Eigen::VectorXd v(grid.node_count());
    for (int ix = 0; ix < side; ++ix) {
        if (static_cast<int>(rows[ix].size()) != side) {
            throw std::runtime_error("CSV field is not square in " + path);
        }
        for (int iy = 0; iy < side; ++iy) {
            v[grid.index(ix, iy)] = rows[ix][iy];
        }
    }
    return ScalarField(grid, std::move(v));
}

}  // namespace pdt
