#pragma once

#include <cstddef>
#include <vector>

namespace shockwave {

// Uniform radial grid r_j = r_min + j*dr, j = 0..n-1.
struct RadialGrid {
    double r_min = 0.2;
    double dr = 5e-4;
    std::size_t n = 0;

    double r(std::size_t j) const { return r_min + dr * static_cast<double>(j); }
    double r_max() const { return r(n - 1); }
    bool contains(double x) const { return x >= r_min && x <= r_max(); }
};

// The PDE state at one time: phi, v = dt phi, w = dr phi on the grid.
struct FieldState {
    double t = 1.0;
    RadialGrid grid;
    std::vector<double> phi, v, w;

    std::size_t size() const { return grid.n; }
};

}  // namespace shockwave
