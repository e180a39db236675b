#include "lpsw/grid.hpp"

#include <stdexcept>
#include <string>

namespace lpsw {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate(int dim, int n, const std::array<double, 2>& periods) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("grid dimension must be 1 or 2, got " + std::to_string(dim));
    if (n < 8 || !power_of_two(n))
        throw std::invalid_argument("grid points per axis must be a power of two >= 8, got " +
                                    std::to_string(n));
    for (int ax = 0; ax < dim; ++ax)
        if (!(periods[static_cast<size_t>(ax)] > 0.0))
            throw std::invalid_argument("grid period must be positive");
}

}  // namespace

PeriodicGrid::PeriodicGrid(int dim, int n, double period)
    : PeriodicGrid(dim, n, std::array<double, 2>{period, period}) {}

PeriodicGrid::PeriodicGrid(int dim, int n, const std::array<double, 2>& periods)
    : dim_(dim), n_(n), period_(periods) {
    validate(dim, n, periods);
    size_ = 1;
    for (int ax = 0; ax < dim_; ++ax) size_ *= static_cast<std::size_t>(n_);
}

double PeriodicGrid::xi_min() const {
    double m = xi(0, 1);
    for (int ax = 1; ax < dim_; ++ax) m = std::min(m, xi(ax, 1));
    return m;
}

double PeriodicGrid::xi_max() const {
    double s = 0.0;
    for (int ax = 0; ax < dim_; ++ax) {
        double v = xi(ax, n_ / 2);
        s += v * v;
    }
    return std::sqrt(s);
}

double PeriodicGrid::xi_certified() const {
    double m = xi(0, 1) * n_ / 3.0;
    for (int ax = 1; ax < dim_; ++ax) m = std::min(m, xi(ax, 1) * n_ / 3.0);
    return m;
}

}  // namespace lpsw
