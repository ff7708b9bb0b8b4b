#include "ccs/domain.hpp"

#include <cmath>
#include <string>

#include "ccs/errors.hpp"

namespace ccs {

void validate_domain(const Domain& d) {
    if (d.dim != 1 && d.dim != 2)
        throw Error("domain dim must be 1 or 2, got " + std::to_string(d.dim));
    for (int ax = 0; ax < d.dim; ++ax) {
        if (!(d.lengths[ax] > 0.0) || !std::isfinite(d.lengths[ax]))
            throw Error("domain length must be positive on axis " + std::to_string(ax));
        if (d.cells[ax] < 3)
            throw Error("domain needs >= 3 cells per axis, got " +
                        std::to_string(d.cells[ax]));
    }
}

Domain make_domain_1d(double length, int nx) {
    Domain d;
    d.dim = 1;
    d.lengths = {length, 1.0};
    d.cells = {nx, 1};
    validate_domain(d);
    return d;
}

Domain make_domain_2d(double lx, double ly, int nx, int ny) {
    Domain d;
    d.dim = 2;
    d.lengths = {lx, ly};
    d.cells = {nx, ny};
    validate_domain(d);
    return d;
}

}  // namespace ccs
