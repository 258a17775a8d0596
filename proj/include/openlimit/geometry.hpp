#pragma once

#include "openlimit/numerics.hpp"
#include "openlimit/symbol.hpp"

#include <cstdint>
#include <vector>

namespace openlimit {

struct Box {
    double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;

    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
};

// Cell-centred grid: centre (ix, iy) sits at re_lo + (ix + 0.5) dx, im_lo + (iy + 0.5) dy.
struct Grid {
    Box box;
    int nx = 0;
    int ny = 0;

    double dx() const { return box.width() / nx; }
    double dy() const { return box.height() / ny; }
    double cell_diagonal() const;
    cplx center(int ix, int iy) const;
};

struct Indicator {
    Grid grid;
    std::vector<std::uint8_t> mask;  // row-major, index iy * nx + ix

    explicit Indicator(const Grid& g) : grid(g), mask(static_cast<std::size_t>(g.nx) * g.ny, 0) {}
    bool at(int ix, int iy) const { return mask[static_cast<std::size_t>(iy) * grid.nx + ix] != 0; }
    void set(int ix, int iy, bool v = true) { mask[static_cast<std::size_t>(iy) * grid.nx + ix] = v; }
    std::size_t count() const;
    std::vector<cplx> marked_centers() const;
};

// Bounding box of the points, padded by `pad` times the larger side on every edge.
Box bounding_box(const std::vector<cplx>& pts, double pad);

// Counterclockwise convex hull (Andrew's monotone chain); collinear points are dropped.
std::vector<cplx> convex_hull(std::vector<cplx> pts);

// Distance from z to the hull polygon, 0 inside. Degenerate hulls (a point or a segment)
// are handled as such.
double hull_excess(const std::vector<cplx>& hull, cplx z);

// Indicator of nonzero winding of a closed curve, by signed scanline crossings per row.
Indicator winding_raster(const PlaneCurve& curve, const Grid& grid, Exec exec = Exec::parallel);

// Same indicator from the argument-sum winding number at each cell centre. Slow; for testing.
Indicator winding_raster_reference(const PlaneCurve& curve, const Grid& grid);

// Marks every cell whose centre lies within tol of the closed polyline.
void mark_near_curve(Indicator& ind, const PlaneCurve& curve, double tol);

// Marks every cell whose closed rectangle meets the polyline.
void mark_crossed_cells(Indicator& ind, const PlaneCurve& curve);

double point_segment_distance(cplx z, cplx a, cplx b);

// Symmetric Hausdorff distance between two finite point sets (infinite if one is empty).
double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace openlimit
