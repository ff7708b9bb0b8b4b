#ifndef CCS_DOMAIN_HPP
#define CCS_DOMAIN_HPP

#include <array>
#include <cstddef>

namespace ccs {

// Box domain with a cell-centered Cartesian grid. The discrete solver supports
// dim 1 and 2; the analytic condition checkers take the dimension n directly
// and are not tied to this type.
struct Domain {
    int dim = 1;
    std::array<double, 2> lengths{1.0, 1.0};
    std::array<int, 2> cells{0, 1};  // cells[1] stays 1 in 1-D

    int nx() const { return cells[0]; }
    int ny() const { return dim == 2 ? cells[1] : 1; }
    double hx() const { return lengths[0] / cells[0]; }
    double hy() const { return dim == 2 ? lengths[1] / cells[1] : 1.0; }
    std::size_t cell_count() const {
        return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
    }
    // volume of one cell; 1-D cells have measure hx
    double cell_volume() const { return dim == 2 ? hx() * hy() : hx(); }
    double volume() const { return cell_volume() * static_cast<double>(cell_count()); }

    // row-major: y is the slow index
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx()) +
               static_cast<std::size_t>(ix);
    }
};

// Throw Error unless dim in {1,2}, lengths positive and cells >= 3 per axis.
Domain make_domain_1d(double length, int nx);
Domain make_domain_2d(double lx, double ly, int nx, int ny);
void validate_domain(const Domain& d);

}  // namespace ccs

#endif
