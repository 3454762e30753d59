#pragma once

#include "patch.hpp"

namespace fdolb {

inline CohesiveModule direct_sum(const CohesiveModule& a, const CohesiveModule& b) {
    require_same(a.cfg, b.cfg);
    CohesiveModule out;
    out.cfg = a.cfg;
    out.space = a.space;
    out.e1_deriv = a.e1_deriv;
    for (const auto& [p, r] : a.ranks) out.ranks[p] += r;
    for (const auto& [p, r] : b.ranks) out.ranks[p] += r;
    std::map<ConnKey, FormMatrix> blocks;
    auto block = [&](int k, int p) -> FormMatrix& {
        auto [it, ins] = blocks.try_emplace(
            ConnKey{k, p}, zero_form_matrix(out.cfg, out.space, out.rank(p - k + 1), out.rank(p)));
        return it->second;
    };
    for (const auto& [key, m] : a.conn) {
        auto& blk = block(key.first, key.second);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) blk.at(i, j) += m.at(i, j);
    }
    for (const auto& [key, m] : b.conn) {
        auto [k, p] = key;
        auto& blk = block(k, p);
        std::size_t ro = a.rank(p - k + 1), co = a.rank(p);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) blk.at(ro + i, co + j) += m.at(i, j);
    }
    for (auto& [key, blk] : blocks)
        if (!mat_is_zero(blk)) out.conn.insert_or_assign(key, std::move(blk));
    return out;
}

/// E[-1]: degrees shifted up, connection negated; inverse of shift.
inline CohesiveModule shift_inverse(const CohesiveModule& e) {
    CohesiveModule out;
    out.cfg = e.cfg;
    out.space = e.space;
    out.e1_deriv = e.e1_deriv;
    for (const auto& [p, r] : e.ranks) out.ranks[p + 1] = r;
    for (const auto& [key, m] : e.conn) {
        FormMatrix neg = mat_map(m, [](const TruncatedForm& f) { return -f; });
        out.conn.insert_or_assign(ConnKey{key.first, key.second + 1}, std::move(neg));
    }
    return out;
}

/// Object of the homotopy fiber product: modules over the two cover halves
/// plus a degree-0 homotopy equivalence between their overlap pullbacks.
struct TripleObject {
    PatchSquare sq;
    PatchModule m;  // over S1
    PatchModule n;  // over S2
    PatchHom phi;   // over the overlap, g*(m) -> l*(n), degree 0
};

/// Morphism of triples: (mu, nu, gamma) of degrees (i, i, i-1), gamma from the
/// overlap pullback of the source M to that of the target N.
struct TripleMorphism {
    TripleObject source;
    TripleObject target;
    int degree = 0;
    PatchHom mu;
    PatchHom nu;
    PatchHom gamma;
};

inline PatchHom overlap_pullback(const PatchSquare& sq, const PatchSet& from, const PatchHom& h) {
    return pullback(PatchProjection(from, sq.overlap()), h);
}

/// d(mu, nu, gamma) = (d mu, d nu, d gamma + (-1)^i (phi2 G(mu) - L(nu) phi1));
/// the (-1)^i twist on the correction is what makes d^2 = 0 under the
/// component-level Leibniz convention of hom_differential.
inline TripleMorphism triple_differential(const TripleMorphism& t) {
    TripleMorphism out;
    out.source = t.source;
    out.target = t.target;
    out.degree = t.degree + 1;
    out.mu = patch_differential(t.mu);
    out.nu = patch_differential(t.nu);
    auto g_mu = overlap_pullback(t.source.sq, t.source.sq.s1, t.mu);
    auto l_nu = overlap_pullback(t.source.sq, t.source.sq.s2, t.nu);
    auto corr = patch_add(patch_compose(t.target.phi, g_mu),
                          patch_negate(patch_compose(l_nu, t.source.phi)));
    if (t.degree % 2) corr = patch_negate(corr);
    out.gamma = patch_add(patch_differential(t.gamma), corr);
    return out;
}

/// (mu', nu', gamma') o (mu, nu, gamma) =
/// (mu'mu, nu'nu, (-1)^{deg inner} gamma' G(mu) + L(nu') gamma); the twist on
/// the first term pairs with the one in triple_differential.
inline TripleMorphism triple_compose(const TripleMorphism& t2, const TripleMorphism& t1) {
    TripleMorphism out;
    out.source = t1.source;
    out.target = t2.target;
    out.degree = t1.degree + t2.degree;
    out.mu = patch_compose(t2.mu, t1.mu);
    out.nu = patch_compose(t2.nu, t1.nu);
    auto g_mu = overlap_pullback(t1.source.sq, t1.source.sq.s1, t1.mu);
    auto l_nu = overlap_pullback(t2.source.sq, t2.source.sq.s2, t2.nu);
    auto left = patch_compose(t2.gamma, g_mu);
    if (t1.degree % 2) left = patch_negate(left);
    out.gamma = patch_add(left, patch_compose(l_nu, t1.gamma));
    return out;
}

inline TripleMorphism triple_identity(const TripleObject& t) {
    TripleMorphism out;
    out.source = t;
    out.target = t;
    out.mu = patch_identity(t.m);
    out.nu = patch_identity(t.n);
    auto g = pullback(PatchProjection(t.sq.s1, t.sq.overlap()), t.m);
    auto l = pullback(PatchProjection(t.sq.s2, t.sq.overlap()), t.n);
    out.gamma = patch_zero_hom(g, l, -1);
    return out;
}

/// Lemma 4.1: a closed degree-0 triple morphism is an equivalence iff mu and
/// nu are homotopy equivalences.
inline bool triple_is_homotopy_equivalence(const TripleMorphism& t) {
    if (t.degree != 0) throw WrongDegree("triple equivalence test needs degree 0");
    auto d = triple_differential(t);
    if (!d.mu.is_zero() || !d.nu.is_zero() || !d.gamma.is_zero()) throw NotClosed();
    return patch_is_homotopy_equivalence(t.mu) && patch_is_homotopy_equivalence(t.nu);
}

/// R(S) = (f*S, k*S, kappa) with kappa the canonical identification.
inline TripleObject restrict(const PatchSquare& sq, const PatchModule& s) {
    if (s.patches != sq.whole()) throw ModelMismatch("module not over the union dga");
    TripleObject out;
    out.sq = sq;
    out.m = pullback(PatchProjection(sq.whole(), sq.s1), s);
    out.n = pullback(PatchProjection(sq.whole(), sq.s2), s);
    out.phi.degree = 0;
    for (int p : sq.overlap()) out.phi.parts.emplace(p, identity_hom(s.part(p)));
    return out;
}

/// Glued module on one overlap patch: shift_inverse(cone(lambda)) for
/// lambda = (phi, -id): M + N -> N_D. In degree p the summands are ordered
/// [N^{p-1} | M^p | N^p].
inline CohesiveModule glue_overlap_part(const CohesiveModule& m, const CohesiveModule& n,
                                        const HomElement& phi) {
    HomElement lambda;
    lambda.source = direct_sum(m, n);
    lambda.target = n;
    for (const auto& [key, pm] : phi.comps) {
        auto [j, p] = key;
        FormMatrix blk = zero_form_matrix(m.cfg, m.space, n.rank(p - j), m.rank(p) + n.rank(p));
        for (std::size_t i = 0; i < pm.rows(); ++i)
            for (std::size_t c = 0; c < pm.cols(); ++c) blk.at(i, c) += pm.at(i, c);
        lambda.set_component(j, p, std::move(blk));
    }
    for (const auto& [p, r] : n.ranks) {
        auto existing = lambda.component(0, p);
        FormMatrix blk = existing ? *existing
                                  : zero_form_matrix(m.cfg, m.space, r, m.rank(p) + r);
        auto one = TruncatedForm::function(m.space, Coeff::one(m.cfg));
        for (std::size_t i = 0; i < r; ++i) blk.at(i, m.rank(p) + i) -= one;
        lambda.set_component(0, p, std::move(blk));
    }
    return shift_inverse(cone(lambda));
}

/// A(M, N, phi) = Cone(lambda)[-1] patchwise; away from the overlap the glued
/// module is the given half.
inline PatchModule glue(const TripleObject& t) {
    if (!patch_is_homotopy_equivalence(t.phi))
        throw NotHomotopyEquivalence("glue needs an equivalence on the overlap");
    PatchModule out;
    out.cfg = t.sq.cfg;
    out.patches = t.sq.whole();
    PatchSet d = t.sq.overlap();
    for (int s : out.patches) {
        if (d.count(s))
            out.parts.emplace(s, glue_overlap_part(t.m.part(s), t.n.part(s), t.phi.parts.at(s)));
        else if (t.sq.s1.count(s))
            out.parts.emplace(s, t.m.part(s));
        else
            out.parts.emplace(s, t.n.part(s));
    }
    return out;
}

/// Adjunction unit S -> glue(restrict(S)): identity off the overlap, the
/// column (0, id, id) into [N^{p-1} | M^p | N^p] on it.
inline PatchHom glue_restrict_unit(const PatchSquare& sq, const PatchModule& s,
                                   const PatchModule& glued) {
    PatchHom out;
    PatchSet d = sq.overlap();
    for (int patch : sq.whole()) {
        const auto& src = s.part(patch);
        const auto& tgt = glued.part(patch);
        if (!d.count(patch)) {
            out.parts.emplace(patch, identity_hom(src));
            continue;
        }
        HomElement h;
        h.source = src;
        h.target = tgt;
        auto one = TruncatedForm::function(src.space, Coeff::one(src.cfg));
        for (const auto& [p, r] : src.ranks) {
            FormMatrix blk = zero_form_matrix(src.cfg, src.space, tgt.rank(p), r);
            std::size_t nsh = src.rank(p - 1);
            for (std::size_t i = 0; i < r; ++i) {
                blk.at(nsh + i, i) += one;
                blk.at(nsh + r + i, i) += one;
            }
            h.set_component(0, p, std::move(blk));
        }
        out.parts.emplace(patch, std::move(h));
    }
    return out;
}

/// Adjunction counit restrict(glue(t)) -> t: projections onto the M and N
/// summands, with gamma the projection onto the shifted N summand.
inline TripleMorphism restrict_glue_counit(const TripleObject& t, const PatchModule& glued) {
    TripleMorphism out;
    out.source = restrict(t.sq, glued);
    out.target = t;
    PatchSet d = t.sq.overlap();
    auto one = TruncatedForm::function(Space::Quotient, Coeff::one(t.sq.cfg));
    auto projection = [&](const CohesiveModule& x, const CohesiveModule& tgt, int degree,
                          auto col_offset) {
        HomElement h;
        h.source = x;
        h.target = tgt;
        h.degree = degree;
        for (const auto& [p, rx] : x.ranks) {
            std::size_t rt = tgt.rank(p + degree);
            if (!rt) continue;
            FormMatrix blk = zero_form_matrix(x.cfg, x.space, rt, rx);
            std::size_t off = col_offset(p);
            for (std::size_t i = 0; i < rt; ++i) blk.at(i, off + i) += one;
            h.set_component(0, p, std::move(blk));
        }
        return h;
    };
    out.mu.degree = 0;
    for (int s : t.sq.s1) {
        const auto& x = glued.part(s);
        const auto& m = t.m.part(s);
        if (!d.count(s)) {
            out.mu.parts.emplace(s, identity_hom(m));
            continue;
        }
        const auto& n = t.n.part(s);
        out.mu.parts.emplace(s, projection(x, m, 0, [&](int p) { return n.rank(p - 1); }));
    }
    out.nu.degree = 0;
    for (int s : t.sq.s2) {
        const auto& x = glued.part(s);
        const auto& n = t.n.part(s);
        if (!d.count(s)) {
            out.nu.parts.emplace(s, identity_hom(n));
            continue;
        }
        const auto& m = t.m.part(s);
        out.nu.parts.emplace(s,
                             projection(x, n, 0, [&](int p) { return n.rank(p - 1) + m.rank(p); }));
    }
    out.gamma.degree = -1;
    for (int s : d) {
        const auto& x = glued.part(s);
        const auto& n = t.n.part(s);
        out.gamma.parts.emplace(s, projection(x, n, -1, [&](int) { return std::size_t(0); }));
    }
    return out;
}

} // namespace fdolb
