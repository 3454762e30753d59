#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace fdolb {

using Cplx = std::complex<double>;

/// Area and centroid of the intersection of one grid cell with the disc.
struct CellGeom {
    double area = 0.0;
    double cx = 0.0, cy = 0.0;
};

namespace detail {

/// Exact geometry of [x0,x1] x [y0,y1] intersected with the disc of radius R,
/// by piecewise-analytic integration in x with breakpoints where the circle
/// crosses the horizontal cell edges.
inline CellGeom circle_cell_geom(double R, double x0, double x1, double y0, double y1) {
    CellGeom g;
    double a0 = std::max(x0, -R), a1 = std::min(x1, R);
    if (a0 >= a1) return g;
    std::vector<double> brk{a0, a1};
    for (double y : {y0, y1}) {
        double s = R * R - y * y;
        if (s > 0) {
            double x = std::sqrt(s);
            if (x > a0 && x < a1) brk.push_back(x);
            if (-x > a0 && -x < a1) brk.push_back(-x);
        }
    }
    std::sort(brk.begin(), brk.end());
    auto F1 = [&](double x) {
        double c = std::clamp(x / R, -1.0, 1.0);
        return 0.5 * (x * std::sqrt(std::max(0.0, R * R - x * x)) + R * R * std::asin(c));
    };
    auto F2 = [&](double x) { return -std::pow(std::max(0.0, R * R - x * x), 1.5) / 3.0; };
    auto F3 = [&](double x) { return R * R * x - x * x * x / 3.0; };
    double area = 0, mx = 0, my = 0;
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        double a = brk[i], b = brk[i + 1];
        if (b - a < 1e-14) continue;
        double xm = 0.5 * (a + b);
        double t = std::sqrt(std::max(0.0, R * R - xm * xm));
        double lo = std::max(y0, -t), hi = std::min(y1, t);
        if (hi <= lo) continue;
        bool top_c = t < y1;    // upper boundary is the circle
        bool bot_c = -t > y0;   // lower boundary is the circle
        double f1 = F1(b) - F1(a), f2 = F2(b) - F2(a), f3 = F3(b) - F3(a);
        double dx = b - a, dx2 = 0.5 * (b * b - a * a);
        double hi_int = top_c ? f1 : y1 * dx;
        double lo_int = bot_c ? -f1 : y0 * dx;
        area += hi_int - lo_int;
        double hi_x = top_c ? f2 : y1 * dx2;
        double lo_x = bot_c ? -f2 : y0 * dx2;
        mx += hi_x - lo_x;
        double hi_sq = top_c ? f3 : y1 * y1 * dx;
        double lo_sq = bot_c ? f3 : y0 * y0 * dx;
        my += 0.5 * (hi_sq - lo_sq);
    }
    g.area = std::max(0.0, area);
    if (g.area > 1e-300) {
        g.cx = mx / g.area;
        g.cy = my / g.area;
    } else {
        g.area = 0.0;
    }
    return g;
}

} // namespace detail

enum class CellKind : std::uint8_t { Outside, Full, Boundary };

/// Uniform G x G grid over [-R, R]^2 with per-cell disc-intersection geometry.
/// Sample points are the centers of cells whose center lies inside the disc.
struct DiscGrid {
    double radius = 1.0;
    int resolution = 0;
    double h = 0.0;
    std::vector<CellKind> kind;  // size G*G, index iy*G+ix
    std::vector<CellGeom> geom;  // exact cell-disc intersection, boundary cells

    DiscGrid() = default;
    DiscGrid(double R, int G) : radius(R), resolution(G), h(2.0 * R / G) {
        if (R <= 0 || G <= 0) throw ShapeMismatch("grid parameters");
        kind.resize(std::size_t(G) * G, CellKind::Outside);
        geom.resize(std::size_t(G) * G);
        for (int iy = 0; iy < G; ++iy)
            for (int ix = 0; ix < G; ++ix) {
                double x0 = -R + ix * h, y0 = -R + iy * h;
                double x1 = x0 + h, y1 = y0 + h;
                bool all_in = true;
                for (double cx : {x0, x1})
                    for (double cy : {y0, y1}) all_in = all_in && (cx * cx + cy * cy < R * R);
                std::size_t idx = std::size_t(iy) * G + ix;
                if (all_in) {
                    kind[idx] = CellKind::Full;
                    geom[idx] = {h * h, x0 + 0.5 * h, y0 + 0.5 * h};
                    continue;
                }
                auto g = detail::circle_cell_geom(R, x0, x1, y0, y1);
                if (g.area > 0) {
                    kind[idx] = CellKind::Boundary;
                    geom[idx] = g;
                }
            }
    }

    std::size_t cells() const { return std::size_t(resolution) * resolution; }
    double center_x(int ix) const { return -radius + (ix + 0.5) * h; }
    double center_y(int iy) const { return -radius + (iy + 0.5) * h; }
    Cplx center(int ix, int iy) const { return {center_x(ix), center_y(iy)}; }
    bool center_inside(int ix, int iy) const {
        double x = center_x(ix), y = center_y(iy);
        return x * x + y * y < radius * radius;
    }

    double total_weight() const {
        double w = 0;
        for (const auto& g : geom) w += g.area;
        return w;
    }
};

} // namespace fdolb
