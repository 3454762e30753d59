#pragma once

#include <random>

#include "descent.hpp"

namespace fdolb {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Scalar random_scalar(Rng& rng, bool allow_zero = true) {
    auto part = [&] { return Rational(rand_int(rng, -3, 3), rand_int(rng, 1, 3)); };
    Scalar s(part(), part());
    if (!allow_zero && s.is_zero()) return Scalar(1);
    return s;
}

/// Random monomial with base degree <= base_budget and z-order in
/// [z_min, cfg.r].
inline FnMono random_mono(ModelConfig cfg, Rng& rng, int base_budget, int z_min = 0,
                          bool allow_zbar = true) {
    FnMono m{BaseMono{0, 0, MultiIndex(std::size_t(cfg.n))}, MultiIndex(std::size_t(cfg.n))};
    int base_deg = rand_int(rng, 0, std::min(base_budget, cfg.d_cap));
    if (cfg.m == 1) {
        for (int k = 0; k < base_deg; ++k) {
            int pick = allow_zbar && cfg.n > 0 ? rand_int(rng, 0, 2) : rand_int(rng, 0, 1);
            if (pick == 0)
                ++m.base.w;
            else if (pick == 1)
                ++m.base.wb;
            else
                ++m.base.zb[std::size_t(rand_int(rng, 0, cfg.n - 1))];
        }
    } else if (allow_zbar && cfg.n > 0) {
        for (int k = 0; k < base_deg; ++k)
            ++m.base.zb[std::size_t(rand_int(rng, 0, cfg.n - 1))];
    }
    if (cfg.n > 0) {
        int z_ord = rand_int(rng, std::min(z_min, cfg.r), cfg.r);
        for (int k = 0; k < z_ord; ++k) ++m.z[std::size_t(rand_int(rng, 0, cfg.n - 1))];
    }
    return m;
}

inline Coeff random_coeff(ModelConfig cfg, Rng& rng, int max_terms, int base_budget,
                          int z_min = 0, bool allow_zbar = true) {
    Coeff c(cfg);
    int terms = rand_int(rng, 0, max_terms);
    for (int t = 0; t < terms; ++t)
        c.add(random_mono(cfg, rng, base_budget, z_min, allow_zbar), random_scalar(rng));
    return c;
}

/// Random mixed-degree form with all coefficients inside the degree budget.
inline TruncatedForm random_form(ModelConfig cfg, Space space, Rng& rng, int base_budget,
                                 int max_terms = 3) {
    TruncatedForm f(cfg, space);
    bool ambient = space == Space::Ambient;
    unsigned max_gen = unsigned(cfg.n + cfg.m);
    int comps = rand_int(rng, 1, 3);
    for (int c = 0; c < comps; ++c) {
        GenMask mask = 0;
        for (unsigned g = 0; g < max_gen; ++g) {
            if (!ambient && int(g) < cfg.n) continue;
            if (rand_int(rng, 0, 2) == 0) mask |= GenMask(1) << g;
        }
        f.add_component(mask, random_coeff(cfg, rng, max_terms, base_budget, 0, ambient));
    }
    return f;
}

inline PolyVectorField random_vector_field(ModelConfig cfg, Rng& rng, int base_budget,
                                           int max_terms = 2) {
    auto v = PolyVectorField::zero(cfg);
    for (auto& c : v.comps) c = random_coeff(cfg, rng, max_terms, base_budget);
    return v;
}

/// Inverse of a degree-0 matrix of the shape identity + nilpotent part (all
/// non-identity entries with positive z-order), by the terminating Neumann
/// series.
inline FormMatrix unipotent_inverse(const FormMatrix& g) {
    if (g.rows() != g.cols()) throw ShapeMismatch("unipotent inverse needs a square matrix");
    if (g.rows() == 0) return g;
    auto cfg = g.at(0, 0).config();
    auto space = g.at(0, 0).space();
    FormMatrix id = identity_form_matrix(cfg, space, g.rows());
    FormMatrix nil = id;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) nil.at(i, j) = id.at(i, j) - g.at(i, j);
    FormMatrix inv = id, power = id;
    for (int k = 0; k <= cfg.r + 1; ++k) {
        power = mat_wedge(power, nil);
        if (mat_is_zero(power)) break;
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) inv.at(i, j) += power.at(i, j);
    }
    return inv;
}

inline FormMatrix random_unipotent(ModelConfig cfg, Rng& rng, std::size_t n) {
    FormMatrix g = identity_form_matrix(cfg, Space::Quotient, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Coeff c = random_coeff(cfg, rng, 2, 0, 1, false);
            if (!c.is_zero()) g.at(i, j) += TruncatedForm::function(Space::Quotient, c);
        }
    return g;
}

/// Seeded integrable module on the exact backend: differentials whose entries
/// have z-order at least ceil((r+1)/2), so consecutive products truncate to
/// zero, then an optional unipotent change of frame.
inline CohesiveModule random_integrable_module(ModelConfig cfg, Rng& rng, std::size_t max_rank = 3,
                                               int degrees = 3, bool conjugate = true) {
    CohesiveModule e;
    e.cfg = cfg;
    for (int p = 0; p < degrees; ++p) {
        std::size_t r = std::size_t(rand_int(rng, 0, int(max_rank)));
        if (r) e.ranks[p] = r;
    }
    int z_min = (cfg.r + 2) / 2;
    for (int p = 0; p + 1 < degrees; ++p) {
        std::size_t rows = e.rank(p + 1), cols = e.rank(p);
        if (!rows || !cols) continue;
        FormMatrix m = zero_form_matrix(cfg, Space::Quotient, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                Coeff c = random_coeff(cfg, rng, 2, 0, z_min, false);
                if (!c.is_zero()) m.at(i, j) = TruncatedForm::function(Space::Quotient, c);
            }
        e.set_component(0, p, std::move(m));
    }
    if (!conjugate) return e;
    std::map<int, FormMatrix> frames;
    for (const auto& [p, r] : e.ranks) frames.emplace(p, random_unipotent(cfg, rng, r));
    CohesiveModule out = e;
    out.conn.clear();
    for (const auto& [key, m] : e.conn) {
        auto [k, p] = key;
        out.set_component(k, p,
                          mat_wedge(mat_wedge(frames.at(p + 1), m), unipotent_inverse(frames.at(p))));
    }
    return out;
}

/// Gauge conjugation: returns the conjugated module and the closed invertible
/// degree-0 morphism E -> E' given by the frames.
inline std::pair<CohesiveModule, HomElement> gauge_conjugate(const CohesiveModule& e, Rng& rng) {
    std::map<int, FormMatrix> frames;
    for (const auto& [p, r] : e.ranks) frames.emplace(p, random_unipotent(e.cfg, rng, r));
    CohesiveModule conj = e;
    conj.conn.clear();
    for (const auto& [key, m] : e.conn) {
        auto [k, p] = key;
        conj.set_component(
            k, p, mat_wedge(mat_wedge(frames.at(p - k + 1), m), unipotent_inverse(frames.at(p))));
    }
    HomElement phi;
    phi.source = e;
    phi.target = conj;
    for (const auto& [p, g] : frames) phi.set_component(0, p, g);
    return {std::move(conj), std::move(phi)};
}

inline HomElement random_hom(const CohesiveModule& e, const CohesiveModule& f, Rng& rng,
                             int degree) {
    HomElement h;
    h.source = e;
    h.target = f;
    h.degree = degree;
    for (const auto& [p, re] : e.ranks) {
        std::size_t rf = f.rank(p + degree);
        if (!rf) continue;
        FormMatrix m = zero_form_matrix(e.cfg, e.space, rf, re);
        for (std::size_t i = 0; i < rf; ++i)
            for (std::size_t j = 0; j < re; ++j) {
                Coeff c = random_coeff(e.cfg, rng, 2, 0, 0, false);
                if (!c.is_zero()) m.at(i, j) = TruncatedForm::function(e.space, c);
            }
        h.set_component(0, p, std::move(m));
    }
    return h;
}

/// Seeded module over the union patch dga.
inline PatchModule random_patch_module(const PatchSquare& sq, Rng& rng, std::size_t max_rank = 2,
                                       int degrees = 3) {
    PatchModule s;
    s.cfg = sq.cfg;
    s.patches = sq.whole();
    for (int p : s.patches)
        s.parts.emplace(p, random_integrable_module(sq.cfg, rng, max_rank, degrees));
    return s;
}

/// Seeded valid triple: on the overlap N is a gauge conjugate of M, with phi
/// the conjugating frame.
inline TripleObject random_triple(const PatchSquare& sq, Rng& rng, std::size_t max_rank = 2,
                                  int degrees = 3) {
    TripleObject t;
    t.sq = sq;
    t.m.cfg = sq.cfg;
    t.m.patches = sq.s1;
    t.n.cfg = sq.cfg;
    t.n.patches = sq.s2;
    t.phi.degree = 0;
    PatchSet d = sq.overlap();
    for (int p : sq.s1) t.m.parts.emplace(p, random_integrable_module(sq.cfg, rng, max_rank, degrees));
    for (int p : sq.s2) {
        if (!d.count(p)) {
            t.n.parts.emplace(p, random_integrable_module(sq.cfg, rng, max_rank, degrees));
            continue;
        }
        auto [conj, frame] = gauge_conjugate(t.m.parts.at(p), rng);
        t.n.parts.emplace(p, std::move(conj));
        t.phi.parts.emplace(p, std::move(frame));
    }
    return t;
}

} // namespace fdolb
