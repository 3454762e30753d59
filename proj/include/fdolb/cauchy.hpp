#pragma once

#include <fftw3.h>

#include <mutex>
#include <numbers>

#include "field.hpp"
#include "parallel.hpp"

namespace fdolb {

/// The solid Cauchy transform (L theta)(w) = -(1/pi) Int theta(xi)/(xi - w)
/// over the disc. Full interior cells go through an FFT convolution with a
/// translation-invariant cell kernel (near-field offsets refined by
/// subdivision, the singular offset vanishing by symmetry); boundary cells are
/// summed directly with exact intersection areas and centroid sampling.
class CauchyOperator {
  public:
    explicit CauchyOperator(DiscGrid grid, int near_radius = 8, int subdivide = 16)
        : grid_(std::move(grid)), near_(near_radius), sub_(subdivide) {
        int G = grid_.resolution;
        N_ = 2 * G;
        build_kernel_fft();
        for (int iy = 0; iy < G; ++iy)
            for (int ix = 0; ix < G; ++ix)
                if (grid_.kind[std::size_t(iy) * G + ix] == CellKind::Boundary)
                    boundary_.push_back(std::size_t(iy) * G + ix);
    }

    const DiscGrid& grid() const { return grid_; }

    /// One scalar plane, G*G values in cell-center layout.
    std::vector<Cplx> apply_scalar(const std::vector<Cplx>& src) const {
        int G = grid_.resolution;
        if (src.size() != grid_.cells()) throw ShapeMismatch("field plane size");
        std::vector<Cplx> padded(std::size_t(N_) * N_, Cplx(0.0));
        for (int iy = 0; iy < G; ++iy)
            for (int ix = 0; ix < G; ++ix)
                if (grid_.kind[std::size_t(iy) * G + ix] == CellKind::Full)
                    padded[std::size_t(iy) * N_ + ix] = src[std::size_t(iy) * G + ix];
        fft2(padded, false);
        for (std::size_t i = 0; i < padded.size(); ++i) padded[i] *= kernel_fft_[i];
        fft2(padded, true);
        double scale = 1.0 / (double(N_) * N_);

        std::vector<Cplx> out(grid_.cells());
        parallel_for(std::size_t(G), [&](std::size_t y0, std::size_t y1) {
            for (std::size_t iy = y0; iy < y1; ++iy)
                for (int ix = 0; ix < G; ++ix) {
                    Cplx acc = padded[iy * N_ + std::size_t(ix)] * scale;
                    Cplx w = grid_.center(ix, int(iy));
                    for (std::size_t b : boundary_) {
                        int bx = int(b % std::size_t(G)), by = int(b / std::size_t(G));
                        Cplx v = src[b];
                        if (v == Cplx(0.0)) continue;
                        if (std::abs(bx - ix) <= 1 && std::abs(by - int(iy)) <= 1)
                            acc += v * refined_boundary_kernel(b, w);
                        else {
                            const auto& gm = grid_.geom[b];
                            acc += v * gm.area / (Cplx(gm.cx, gm.cy) - w);
                        }
                    }
                    out[iy * std::size_t(G) + std::size_t(ix)] =
                        acc * (-1.0 / std::numbers::pi);
                }
        });
        return out;
    }

    GridField apply(const GridField& f) const {
        int G = grid_.resolution, d = f.d;
        if (f.resolution != G) throw ShapeMismatch("field grid resolution");
        GridField out(G, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                std::vector<Cplx> plane(grid_.cells());
                for (int iy = 0; iy < G; ++iy)
                    for (int ix = 0; ix < G; ++ix)
                        plane[std::size_t(iy) * G + ix] = f.at(ix, iy, a, b);
                auto res = apply_scalar(plane);
                for (int iy = 0; iy < G; ++iy)
                    for (int ix = 0; ix < G; ++ix)
                        out.at(ix, iy, a, b) = res[std::size_t(iy) * G + ix];
            }
        return out;
    }

  private:
    /// Integral of 1/(xi - w) over a full square cell at center offset v from
    /// w, approximated at the cell center (far) or by subdivision (near); the
    /// coincident offset vanishes by symmetry.
    Cplx cell_kernel(int dx, int dy) const {
        double h = grid_.h;
        if (dx == 0 && dy == 0) return 0.0;
        if (std::abs(dx) <= near_ && std::abs(dy) <= near_) {
            Cplx acc = 0.0;
            double hs = h / sub_;
            for (int sy = 0; sy < sub_; ++sy)
                for (int sx = 0; sx < sub_; ++sx) {
                    Cplx xi(dx * h + (sx + 0.5) * hs - 0.5 * h,
                            dy * h + (sy + 0.5) * hs - 0.5 * h);
                    acc += hs * hs / xi;
                }
            return acc;
        }
        return h * h / Cplx(dx * h, dy * h);
    }

    /// Boundary source cell evaluated for an adjacent or coincident target:
    /// subdivide, keep subcells inside the disc, drop the near-singular ones.
    Cplx refined_boundary_kernel(std::size_t cell, Cplx w) const {
        int G = grid_.resolution;
        int bx = int(cell % std::size_t(G)), by = int(cell / std::size_t(G));
        double h = grid_.h, hs = h / sub_;
        double x0 = -grid_.radius + bx * h, y0 = -grid_.radius + by * h;
        double R2 = grid_.radius * grid_.radius;
        Cplx acc = 0.0;
        for (int sy = 0; sy < sub_; ++sy)
            for (int sx = 0; sx < sub_; ++sx) {
                double x = x0 + (sx + 0.5) * hs, y = y0 + (sy + 0.5) * hs;
                if (x * x + y * y >= R2) continue;
                Cplx diff = Cplx(x, y) - w;
                if (std::abs(diff) < 0.5 * hs) continue;
                acc += hs * hs / diff;
            }
        return acc;
    }

    void build_kernel_fft() {
        int G = grid_.resolution;
        kernel_fft_.assign(std::size_t(N_) * N_, Cplx(0.0));
        auto idx = [&](int k) { return std::size_t((k + N_) % N_); };
        for (int dy = -(G - 1); dy <= G - 1; ++dy)
            for (int dx = -(G - 1); dx <= G - 1; ++dx)
                // convolution form out(i) = sum_j theta(j) K(i - j) needs the
                // kernel at slot (i - j) to carry the source offset j - i
                kernel_fft_[idx(dy) * std::size_t(N_) + idx(dx)] = cell_kernel(-dx, -dy);
        fft2(kernel_fft_, false);
    }

    void fft2(std::vector<Cplx>& buf, bool inverse) const {
        static std::mutex plan_mutex;
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(plan_mutex);
            plan = fftw_plan_dft_2d(N_, N_, reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }

    DiscGrid grid_;
    int near_;
    int sub_;
    int N_ = 0;
    std::vector<Cplx> kernel_fft_;
    std::vector<std::size_t> boundary_;
};

} // namespace fdolb
