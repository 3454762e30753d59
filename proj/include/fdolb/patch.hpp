#pragma once

#include <set>

#include "ext.hpp"

namespace fdolb {

using PatchSet = std::set<int>;

inline PatchSet set_union(const PatchSet& a, const PatchSet& b) {
    PatchSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline PatchSet set_intersection(const PatchSet& a, const PatchSet& b) {
    PatchSet out;
    for (int x : a)
        if (b.count(x)) out.insert(x);
    return out;
}

inline bool is_subset(const PatchSet& a, const PatchSet& b) {
    for (int x : a)
        if (!b.count(x)) return false;
    return true;
}

/// Two-set cover of a finite patch set: the dgas of the descent square are
/// products of copies of the model dga over S1, S2, their intersection and
/// their union.
struct PatchSquare {
    ModelConfig cfg;
    PatchSet s1, s2;

    PatchSet whole() const { return set_union(s1, s2); }
    PatchSet overlap() const { return set_intersection(s1, s2); }
};

/// Projection homomorphism between product dgas, from a patch set onto a
/// subset.
struct PatchProjection {
    PatchSet from, to;

    PatchProjection(PatchSet f, PatchSet t) : from(std::move(f)), to(std::move(t)) {
        if (!is_subset(to, from)) throw ModelMismatch("projection target is not a sub-patch set");
    }
};

/// Cohesive module over a product dga: one cohesive module per patch. Missing
/// patches carry the zero module.
struct PatchModule {
    ModelConfig cfg;
    PatchSet patches;
    std::map<int, CohesiveModule> parts;

    const CohesiveModule& part(int s) const {
        auto it = parts.find(s);
        if (it == parts.end()) throw ShapeMismatch("missing patch part");
        return it->second;
    }
};

inline PatchModule make_patch_module(ModelConfig cfg, PatchSet patches,
                                     std::map<int, CohesiveModule> parts) {
    for (const auto& [s, e] : parts)
        if (!patches.count(s)) throw ShapeMismatch("part outside patch set");
    for (int s : patches)
        if (!parts.count(s)) {
            CohesiveModule zero;
            zero.cfg = cfg;
            parts.emplace(s, std::move(zero));
        }
    return {cfg, std::move(patches), std::move(parts)};
}

/// Morphism of patch modules: one hom element per patch, a common degree.
struct PatchHom {
    int degree = 0;
    std::map<int, HomElement> parts;

    bool is_zero() const {
        for (const auto& [s, h] : parts)
            if (!h.is_zero()) return false;
        return true;
    }
};

/// Base change along a projection is selection of the surviving patch parts.
inline PatchModule pullback(const PatchProjection& f, const PatchModule& e) {
    if (e.patches != f.from) throw ModelMismatch("module not over the projection source");
    PatchModule out;
    out.cfg = e.cfg;
    out.patches = f.to;
    for (int s : f.to) out.parts.emplace(s, e.part(s));
    return out;
}

inline PatchHom pullback(const PatchProjection& f, const PatchHom& h) {
    PatchHom out;
    out.degree = h.degree;
    for (int s : f.to) {
        auto it = h.parts.find(s);
        if (it == h.parts.end()) throw ShapeMismatch("missing patch hom part");
        out.parts.emplace(s, it->second);
    }
    return out;
}

inline PatchHom patch_identity(const PatchModule& e) {
    PatchHom out;
    for (const auto& [s, part] : e.parts) out.parts.emplace(s, identity_hom(part));
    return out;
}

inline PatchHom patch_zero_hom(const PatchModule& src, const PatchModule& tgt, int degree) {
    if (src.patches != tgt.patches) throw ModelMismatch("patch sets differ");
    PatchHom out;
    out.degree = degree;
    for (int s : src.patches) {
        HomElement h;
        h.source = src.part(s);
        h.target = tgt.part(s);
        h.degree = degree;
        out.parts.emplace(s, std::move(h));
    }
    return out;
}

inline PatchHom patch_differential(const PatchHom& h) {
    PatchHom out;
    out.degree = h.degree + 1;
    for (const auto& [s, part] : h.parts) out.parts.emplace(s, hom_differential(part));
    return out;
}

inline PatchHom patch_compose(const PatchHom& psi, const PatchHom& phi) {
    if (psi.parts.size() != phi.parts.size()) throw ShapeMismatch("patch sets differ");
    PatchHom out;
    out.degree = psi.degree + phi.degree;
    for (const auto& [s, p] : psi.parts) {
        auto it = phi.parts.find(s);
        if (it == phi.parts.end()) throw ShapeMismatch("patch sets differ");
        out.parts.emplace(s, compose(p, it->second));
    }
    return out;
}

inline PatchHom patch_add(const PatchHom& a, const PatchHom& b) {
    if (a.degree != b.degree || a.parts.size() != b.parts.size())
        throw ShapeMismatch("patch hom mismatch");
    PatchHom out;
    out.degree = a.degree;
    for (const auto& [s, ha] : a.parts) {
        HomElement sum = ha;
        const auto& hb = b.parts.at(s);
        for (const auto& [key, m] : hb.comps) sum.accumulate(key.first, key.second, m);
        out.parts.emplace(s, std::move(sum));
    }
    return out;
}

inline PatchHom patch_negate(const PatchHom& a) {
    PatchHom out;
    out.degree = a.degree;
    for (const auto& [s, h] : a.parts) {
        HomElement neg = h;
        for (auto& [key, m] : neg.comps)
            m = mat_map(m, [](const TruncatedForm& f) { return -f; });
        out.parts.emplace(s, std::move(neg));
    }
    return out;
}

inline bool patch_is_homotopy_equivalence(const PatchHom& h) {
    for (const auto& [s, part] : h.parts)
        if (!is_homotopy_equivalence(part)) return false;
    return true;
}

inline PatchModule patch_shift(const PatchModule& e) {
    PatchModule out;
    out.cfg = e.cfg;
    out.patches = e.patches;
    for (const auto& [s, part] : e.parts) out.parts.emplace(s, shift(part));
    return out;
}

inline PatchModule patch_cone(const PatchHom& phi, const PatchModule& src,
                              const PatchModule& tgt) {
    PatchModule out;
    out.cfg = tgt.cfg;
    out.patches = tgt.patches;
    for (int s : tgt.patches) {
        auto it = phi.parts.find(s);
        if (it == phi.parts.end()) throw ShapeMismatch("missing patch hom part");
        out.parts.emplace(s, cone(it->second));
    }
    (void)src;
    return out;
}

/// The four conditions of the descent assumption for the projection square:
/// fiber-product carrier, surjectivity of the overlap restriction, patchwise
/// freeness (hence flatness) and the base-change identity g f = l k.
inline bool check_descent_assumptions(const PatchSquare& sq, const PatchModule& probe) {
    PatchSet a = sq.whole(), d = sq.overlap();
    // A = B x_D C: membership in the union is membership in S1 or S2, and the
    // two restrictions agree exactly on the intersection.
    for (int s : a)
        if (!sq.s1.count(s) && !sq.s2.count(s)) return false;
    for (int s : d)
        if (!sq.s1.count(s) || !sq.s2.count(s)) return false;
    // l0 surjective: the overlap is a sub-patch set of S2, so the projection
    // hits every component.
    if (!is_subset(d, sq.s2)) return false;
    // Flatness via freeness: pullback preserves ranks patchwise.
    PatchProjection f(a, sq.s1), k(a, sq.s2);
    auto mb = pullback(f, probe);
    for (int s : sq.s1)
        if (mb.part(s).ranks != probe.part(s).ranks) return false;
    // Base change: both routes around the square agree.
    PatchProjection g(sq.s1, d), l(sq.s2, d);
    auto via_b = pullback(g, pullback(f, probe));
    auto via_c = pullback(l, pullback(k, probe));
    for (int s : d) {
        if (via_b.part(s).ranks != via_c.part(s).ranks) return false;
        if (via_b.part(s).conn.size() != via_c.part(s).conn.size()) return false;
        for (const auto& [key, m] : via_b.part(s).conn) {
            auto it = via_c.part(s).conn.find(key);
            if (it == via_c.part(s).conn.end() || !(it->second == m)) return false;
        }
    }
    return true;
}

} // namespace fdolb
