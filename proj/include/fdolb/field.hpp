#pragma once

#include <fstream>
#include <map>
#include <string>

#include "grid.hpp"
#include "multi_index.hpp"

namespace fdolb {

/// d x d complex matrix field sampled at every grid cell center; layout
/// (iy * G + ix) * d * d + row * d + col, row-major in both senses.
struct GridField {
    int resolution = 0;
    int d = 1;
    std::vector<Cplx> data;

    GridField() = default;
    GridField(int G, int dim) : resolution(G), d(dim) {
        data.assign(std::size_t(G) * G * dim * dim, Cplx(0.0));
    }

    std::size_t cell_index(int ix, int iy) const {
        return (std::size_t(iy) * resolution + ix) * d * d;
    }
    Cplx& at(int ix, int iy, int a, int b) { return data[cell_index(ix, iy) + a * d + b]; }
    const Cplx& at(int ix, int iy, int a, int b) const {
        return data[cell_index(ix, iy) + a * d + b];
    }

    static GridField identity(int G, int dim) {
        GridField f(G, dim);
        for (int iy = 0; iy < G; ++iy)
            for (int ix = 0; ix < G; ++ix)
                for (int a = 0; a < dim; ++a) f.at(ix, iy, a, a) = 1.0;
        return f;
    }
};

inline void require_same_shape(const GridField& a, const GridField& b) {
    if (a.resolution != b.resolution || a.d != b.d) throw ShapeMismatch("grid field shapes");
}

inline GridField field_add(const GridField& a, const GridField& b) {
    require_same_shape(a, b);
    GridField out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

inline GridField field_sub(const GridField& a, const GridField& b) {
    require_same_shape(a, b);
    GridField out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
    return out;
}

inline GridField field_scale(const GridField& a, Cplx s) {
    GridField out = a;
    for (auto& v : out.data) v *= s;
    return out;
}

/// Pointwise matrix product a(w) * b(w).
inline GridField field_mul(const GridField& a, const GridField& b) {
    require_same_shape(a, b);
    int G = a.resolution, d = a.d;
    GridField out(G, d);
    for (int iy = 0; iy < G; ++iy)
        for (int ix = 0; ix < G; ++ix)
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    Cplx acc = 0.0;
                    for (int k = 0; k < d; ++k) acc += a.at(ix, iy, r, k) * b.at(ix, iy, k, c);
                    out.at(ix, iy, r, c) = acc;
                }
    return out;
}

/// Sup over sample points (cell centers inside radius_cap) of the max-abs
/// matrix entry.
inline double sup_norm(const GridField& f, const DiscGrid& grid, double radius_cap) {
    double m = 0;
    int G = grid.resolution;
    for (int iy = 0; iy < G; ++iy)
        for (int ix = 0; ix < G; ++ix) {
            if (std::abs(grid.center(ix, iy)) >= radius_cap) continue;
            for (int a = 0; a < f.d; ++a)
                for (int b = 0; b < f.d; ++b) m = std::max(m, std::abs(f.at(ix, iy, a, b)));
        }
    return m;
}

inline double sup_norm(const GridField& f, const DiscGrid& grid) {
    return sup_norm(f, grid, grid.radius);
}

/// Family of matrix fields indexed by normal multi-indices |I| <= r.
struct GridMatrixFn {
    DiscGrid grid;
    int d = 1;
    int n = 1;
    int r = 0;
    std::map<MultiIndex, GridField> orders;

    const GridField* order(const MultiIndex& I) const {
        auto it = orders.find(I);
        return it == orders.end() ? nullptr : &it->second;
    }
    GridField order_or_zero(const MultiIndex& I) const {
        auto f = order(I);
        return f ? *f : GridField(grid.resolution, d);
    }
};

/// Binary field file: magic "FDMF", u32 version=1, u32 G, u32 d, f64 radius,
/// then G*G*d*d complex doubles (re, im) in the GridField layout.
inline void write_field(const std::string& path, const GridField& f, double radius) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open field file for writing: " + path);
    out.write("FDMF", 4);
    std::uint32_t ver = 1, g = std::uint32_t(f.resolution), d = std::uint32_t(f.d);
    out.write(reinterpret_cast<const char*>(&ver), 4);
    out.write(reinterpret_cast<const char*>(&g), 4);
    out.write(reinterpret_cast<const char*>(&d), 4);
    out.write(reinterpret_cast<const char*>(&radius), 8);
    out.write(reinterpret_cast<const char*>(f.data.data()),
              std::streamsize(f.data.size() * sizeof(Cplx)));
    if (!out) throw Error("failed writing field file: " + path);
}

inline GridField read_field(const std::string& path, double* radius_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open field file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "FDMF") throw Error("bad field file magic: " + path);
    std::uint32_t ver = 0, g = 0, d = 0;
    double radius = 0;
    in.read(reinterpret_cast<char*>(&ver), 4);
    in.read(reinterpret_cast<char*>(&g), 4);
    in.read(reinterpret_cast<char*>(&d), 4);
    in.read(reinterpret_cast<char*>(&radius), 8);
    if (!in || ver != 1) throw Error("bad field file header: " + path);
    GridField f{int(g), int(d)};
    in.read(reinterpret_cast<char*>(f.data.data()), std::streamsize(f.data.size() * sizeof(Cplx)));
    if (!in) throw Error("truncated field file: " + path);
    if (radius_out) *radius_out = radius;
    return f;
}

} // namespace fdolb
