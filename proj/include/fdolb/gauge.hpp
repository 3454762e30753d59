#pragma once

#include <limits>

#include "cauchy.hpp"
#include "cohesive.hpp"

namespace fdolb {

struct SolverConfig {
    double tol = 1e-10;
    int max_iter = 500;
    double det_threshold = 0.1;
};

struct OrderStats {
    MultiIndex index;
    int iterations = 0;
    double contraction = 0.0;  // worst measured ratio of consecutive deltas
    double final_delta = 0.0;
};

namespace detail {

inline Cplx det(const GridField& f, int ix, int iy) {
    int d = f.d;
    std::vector<Cplx> m(std::size_t(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) m[std::size_t(a) * d + b] = f.at(ix, iy, a, b);
    Cplx out = 1.0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(m[std::size_t(r) * d + col]) > std::abs(m[std::size_t(piv) * d + col]))
                piv = r;
        if (std::abs(m[std::size_t(piv) * d + col]) == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < d; ++c) std::swap(m[std::size_t(piv) * d + c], m[std::size_t(col) * d + c]);
            out = -out;
        }
        Cplx p = m[std::size_t(col) * d + col];
        out *= p;
        for (int r = col + 1; r < d; ++r) {
            Cplx factor = m[std::size_t(r) * d + col] / p;
            for (int c = col; c < d; ++c) m[std::size_t(r) * d + c] -= factor * m[std::size_t(col) * d + c];
        }
    }
    return out;
}

/// Fixed-point iteration phi -> L(phi rho0 + inhom) from phi = 0.
inline GridField contract_to_fixed_point(const CauchyOperator& op, const GridField& rho0,
                                         const GridField& inhom, const SolverConfig& cfg,
                                         OrderStats& stats) {
    const auto& grid = op.grid();
    double big_n = sup_norm(rho0, grid);
    if (big_n >= 1.0) throw NotContractive(big_n);
    GridField phi(grid.resolution, rho0.d);
    double prev_delta = -1.0;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        GridField next = op.apply(field_add(field_mul(phi, rho0), inhom));
        double delta = sup_norm(field_sub(next, phi), grid);
        if (prev_delta > 0.0 && iter >= 2)
            stats.contraction = std::max(stats.contraction, delta / prev_delta);
        phi = std::move(next);
        stats.iterations = iter;
        stats.final_delta = delta;
        if (delta <= cfg.tol) return phi;
        prev_delta = delta;
    }
    throw MaxIterExceeded();
}

} // namespace detail

/// Zeroth order: f = L(rho0 + f rho0), g0 = 1 + f, with the invertibility
/// floor on |det g0| over the sample points.
inline GridField solve_order0(const CauchyOperator& op, const GridField& rho0,
                              const SolverConfig& cfg, OrderStats* stats_out = nullptr) {
    OrderStats stats;
    stats.index = MultiIndex(std::size_t(0));
    GridField f = detail::contract_to_fixed_point(op, rho0, rho0, cfg, stats);
    GridField g0 = field_add(GridField::identity(f.resolution, f.d), f);
    const auto& grid = op.grid();
    double min_det = std::numeric_limits<double>::infinity();
    for (int iy = 0; iy < grid.resolution; ++iy)
        for (int ix = 0; ix < grid.resolution; ++ix)
            if (grid.center_inside(ix, iy))
                min_det = std::min(min_det, std::abs(detail::det(g0, ix, iy)));
    if (min_det < cfg.det_threshold) throw SingularGauge(min_det);
    if (stats_out) *stats_out = stats;
    return g0;
}

/// Inhomogeneous term A_I = sum over I = J + K, |K| > 0, of g_J rho_K.
inline GridField gauge_inhomogeneity(const MultiIndex& I,
                                     const std::map<MultiIndex, GridField>& lower,
                                     const GridMatrixFn& rho) {
    GridField acc(rho.grid.resolution, rho.d);
    for (const auto& [k, rho_k] : rho.orders) {
        if (k.is_zero() || !I.dominates(k)) continue;
        MultiIndex j = I - k;
        auto it = lower.find(j);
        if (it == lower.end()) throw MissingLowerOrder();
        acc = field_add(acc, field_mul(it->second, rho_k));
    }
    return acc;
}

/// Order I > 0: fixed point of T_I(phi) = L(phi rho0 + A_I).
inline GridField solve_order_I(const CauchyOperator& op, const MultiIndex& I,
                               const std::map<MultiIndex, GridField>& lower,
                               const GridMatrixFn& rho, const SolverConfig& cfg,
                               OrderStats* stats_out = nullptr) {
    if (I.is_zero()) throw ShapeMismatch("solve_order_I needs a positive order");
    for (const auto& [k, unused] : rho.orders) {
        (void)unused;
        if (!k.is_zero() && I.dominates(k) && !lower.count(I - k)) throw MissingLowerOrder();
    }
    GridField rho0 = rho.order_or_zero(MultiIndex(std::size_t(rho.n)));
    GridField inhom = gauge_inhomogeneity(I, lower, rho);
    OrderStats stats;
    stats.index = I;
    GridField g = detail::contract_to_fixed_point(op, rho0, inhom, cfg, stats);
    if (stats_out) *stats_out = stats;
    return g;
}

struct GaugeSolution {
    GridMatrixFn g;
    std::vector<OrderStats> stats;
};

/// Full order-by-order solve in non-decreasing |I|.
inline GaugeSolution solve_gauge(const CauchyOperator& op, const GridMatrixFn& rho,
                                 const SolverConfig& cfg) {
    GaugeSolution sol;
    sol.g.grid = rho.grid;
    sol.g.d = rho.d;
    sol.g.n = rho.n;
    sol.g.r = rho.r;
    OrderStats s0;
    MultiIndex zero(std::size_t(rho.n));
    sol.g.orders.emplace(zero, solve_order0(op, rho.order_or_zero(zero), cfg, &s0));
    s0.index = zero;
    sol.stats.push_back(s0);
    for (const auto& I : multi_indices_up_to(rho.n, rho.r)) {
        if (I.is_zero()) continue;
        OrderStats s;
        sol.g.orders.emplace(I, solve_order_I(op, I, sol.g.orders, rho, cfg, &s));
        sol.stats.push_back(s);
    }
    return sol;
}

/// Centered-difference d/dwbar = (d/dx + i d/dy) / 2 at one sample point.
inline Cplx dwbar_fd(const GridField& f, const DiscGrid& grid, int ix, int iy, int a, int b) {
    double inv2h = 0.5 / grid.h;
    Cplx fx = (f.at(ix + 1, iy, a, b) - f.at(ix - 1, iy, a, b)) * inv2h;
    Cplx fy = (f.at(ix, iy + 1, a, b) - f.at(ix, iy - 1, a, b)) * inv2h;
    return 0.5 * (fx + Cplx(0.0, 1.0) * fy);
}

/// Per-order sup norm of dg_I/dwbar - (g_I rho_0 + sum g_J rho_K) on the
/// interior |w| <= interior_frac * radius.
inline std::map<MultiIndex, double> verify_gauge(const GridMatrixFn& g, const GridMatrixFn& rho,
                                                 double interior_frac = 0.8) {
    const auto& grid = g.grid;
    if (rho.grid.resolution != grid.resolution) throw ShapeMismatch("grids differ");
    double cap = interior_frac * grid.radius;
    std::map<MultiIndex, double> report;
    MultiIndex zero(std::size_t(g.n));
    GridField rho0 = rho.order_or_zero(zero);
    for (const auto& [I, g_i] : g.orders) {
        GridField rhs = field_mul(g_i, rho0);
        for (const auto& [k, rho_k] : rho.orders) {
            if (k.is_zero() || !I.dominates(k)) continue;
            auto it = g.orders.find(I - k);
            if (it == g.orders.end()) throw MissingLowerOrder();
            rhs = field_add(rhs, field_mul(it->second, rho_k));
        }
        double worst = 0.0;
        for (int iy = 1; iy + 1 < grid.resolution; ++iy)
            for (int ix = 1; ix + 1 < grid.resolution; ++ix) {
                if (std::abs(grid.center(ix, iy)) > cap) continue;
                for (int a = 0; a < g_i.d; ++a)
                    for (int b = 0; b < g_i.d; ++b)
                        worst = std::max(worst, std::abs(dwbar_fd(g_i, grid, ix, iy, a, b) -
                                                         rhs.at(ix, iy, a, b)));
            }
        report[I] = worst;
    }
    return report;
}

/// Flatness of a dbar-connection over an m-dimensional base: automatic at
/// m <= 1 because there is no room for a (0,2)-form.
inline bool check_flatness(int m) {
    if (m > 1) throw UnsupportedDimension(m);
    return true;
}

/// Symbolic re-derivation for m = 1 quotient-model connection forms:
/// dbar(alpha) + alpha ^ alpha must vanish identically.
inline bool check_flatness(const FormMatrix& alpha) {
    if (alpha.rows() != alpha.cols()) throw ShapeMismatch("connection form must be square");
    if (alpha.rows() == 0) return true;
    const auto& cfg = alpha.at(0, 0).config();
    if (cfg.m > 1) throw UnsupportedDimension(cfg.m);
    auto curvature = mat_wedge(alpha, alpha);
    for (std::size_t i = 0; i < alpha.rows(); ++i)
        for (std::size_t j = 0; j < alpha.cols(); ++j) curvature.at(i, j) += dbar(alpha.at(i, j));
    return mat_is_zero(curvature);
}

/// Rescaling w -> c w makes sup|rho_0| as small as needed:
/// rho'(u) = c * rho(c u), bilinear interpolation between cell centers.
inline GridField rescale_field(const GridField& f, const DiscGrid& grid, double c) {
    int G = grid.resolution;
    GridField out(G, f.d);
    auto sample = [&](double x, double y, int a, int b) -> Cplx {
        double fx = (x + grid.radius) / grid.h - 0.5;
        double fy = (y + grid.radius) / grid.h - 0.5;
        int ix = std::clamp(int(std::floor(fx)), 0, G - 2);
        int iy = std::clamp(int(std::floor(fy)), 0, G - 2);
        double tx = std::clamp(fx - ix, 0.0, 1.0), ty = std::clamp(fy - iy, 0.0, 1.0);
        return (1 - tx) * (1 - ty) * f.at(ix, iy, a, b) + tx * (1 - ty) * f.at(ix + 1, iy, a, b) +
               (1 - tx) * ty * f.at(ix, iy + 1, a, b) + tx * ty * f.at(ix + 1, iy + 1, a, b);
    };
    for (int iy = 0; iy < G; ++iy)
        for (int ix = 0; ix < G; ++ix)
            for (int a = 0; a < f.d; ++a)
                for (int b = 0; b < f.d; ++b)
                    out.at(ix, iy, a, b) =
                        c * sample(c * grid.center_x(ix), c * grid.center_y(iy), a, b);
    return out;
}

inline GridMatrixFn rescale(const GridMatrixFn& rho, double c) {
    GridMatrixFn out = rho;
    for (auto& [I, f] : out.orders) f = rescale_field(f, rho.grid, c);
    return out;
}

} // namespace fdolb
