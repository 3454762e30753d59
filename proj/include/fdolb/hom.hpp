#pragma once

#include "cohesive.hpp"

namespace fdolb {

/// Key (j, p): form degree of the component, source module degree.
using HomKey = std::pair<int, int>;

/// Degree-k element of the hom complex P_A(source, target). Component (j, p)
/// is a rank_target(p+k-j) x rank_source(p) matrix of degree-j forms.
struct HomElement {
    CohesiveModule source;
    CohesiveModule target;
    int degree = 0;
    std::map<HomKey, FormMatrix> comps;

    const FormMatrix* component(int j, int p) const {
        auto it = comps.find({j, p});
        return it == comps.end() ? nullptr : &it->second;
    }

    void set_component(int j, int p, FormMatrix m) {
        if (m.rows() != target.rank(p + degree - j) || m.cols() != source.rank(p))
            throw ShapeMismatch("hom component shape");
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m.at(i, c).is_homogeneous(j)) throw ShapeMismatch("hom component form degree");
        if (mat_is_zero(m)) {
            comps.erase({j, p});
            return;
        }
        comps.insert_or_assign(HomKey{j, p}, std::move(m));
    }

    void accumulate(int j, int p, const FormMatrix& m) {
        auto it = comps.find({j, p});
        if (it == comps.end()) {
            if (!mat_is_zero(m)) comps.emplace(HomKey{j, p}, m);
            return;
        }
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t c = 0; c < m.cols(); ++c) it->second.at(i, c) += m.at(i, c);
        if (mat_is_zero(it->second)) comps.erase(it);
    }

    bool is_zero() const { return comps.empty(); }
};

inline HomElement identity_hom(const CohesiveModule& e) {
    HomElement id;
    id.source = e;
    id.target = e;
    for (const auto& [p, r] : e.ranks)
        id.set_component(0, p, identity_form_matrix(e.cfg, e.space, r));
    return id;
}

/// d(phi) = E_target o phi - (-1)^{|phi|} phi o E_source, expanded into
/// components; the implicit dbar of the k=1 connection parts contributes the
/// (-1)^{target degree} entrywise derivative term.
inline HomElement hom_differential(const HomElement& phi) {
    const auto& e1 = phi.source;
    const auto& e2 = phi.target;
    HomElement out;
    out.source = e1;
    out.target = e2;
    out.degree = phi.degree + 1;
    int ksign = (phi.degree % 2) ? -1 : 1;
    for (const auto& [key, m] : phi.comps) {
        auto [j, p] = key;
        int tgt_deg = p + phi.degree - j;
        auto dm = mat_map(m, [&](const TruncatedForm& f) {
            auto d = e2.derive(f);
            return (tgt_deg % 2) ? -d : d;
        });
        out.accumulate(j + 1, p, dm);
        for (const auto& [ckey, c2] : e2.conn) {
            if (ckey.second != tgt_deg) continue;
            out.accumulate(j + ckey.first, p, mat_wedge(c2, m));
        }
    }
    for (const auto& [ckey, c1] : e1.conn) {
        auto [k1, p] = ckey;
        for (const auto& [key, m] : phi.comps) {
            if (key.second != p - k1 + 1) continue;
            auto prod = mat_wedge(m, c1);
            if (ksign > 0) prod = mat_map(prod, [](const TruncatedForm& f) { return -f; });
            out.accumulate(key.first + k1, p, prod);
        }
    }
    return out;
}

/// Componentwise composition; Koszul signs live inside the wedge of the form
/// entries.
inline HomElement compose(const HomElement& psi, const HomElement& phi) {
    HomElement out;
    out.source = phi.source;
    out.target = psi.target;
    out.degree = psi.degree + phi.degree;
    for (const auto& [pk, pm] : psi.comps)
        for (const auto& [fk, fm] : phi.comps) {
            if (pk.second != fk.second + phi.degree - fk.first) continue;
            out.accumulate(pk.first + fk.first, fk.second, mat_wedge(pm, fm));
        }
    return out;
}

/// Cone of a closed degree-0 morphism phi: E -> F, carried by F + E[1] with the
/// upper-triangular connection [[F, phi], [0, -E]].
inline CohesiveModule cone(const HomElement& phi) {
    if (phi.degree != 0) throw WrongDegree("cone needs a degree-0 morphism");
    if (!hom_differential(phi).is_zero()) throw NotClosed("cone needs a closed morphism");
    const auto& e = phi.source;
    const auto& f = phi.target;
    CohesiveModule out;
    out.cfg = f.cfg;
    out.space = f.space;
    out.e1_deriv = f.e1_deriv;
    std::map<int, std::size_t> fr, er;
    for (const auto& [p, r] : f.ranks) fr[p] = r;
    for (const auto& [p, r] : e.ranks) er[p - 1] = r;
    auto frk = [&](int p) { return fr.count(p) ? fr[p] : 0; };
    auto erk = [&](int p) { return er.count(p) ? er[p] : 0; };
    std::map<int, std::size_t> all;
    for (const auto& [p, r] : fr) all[p] += r;
    for (const auto& [p, r] : er) all[p] += r;
    out.ranks = all;

    std::map<ConnKey, FormMatrix> blocks;
    auto block = [&](int k, int p) -> FormMatrix& {
        auto [it, ins] = blocks.try_emplace(
            ConnKey{k, p},
            zero_form_matrix(out.cfg, out.space, frk(p - k + 1) + erk(p - k + 1), frk(p) + erk(p)));
        return it->second;
    };
    for (const auto& [key, m] : f.conn) {
        auto [k, p] = key;
        auto& b = block(k, p);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) b.at(i, j) += m.at(i, j);
    }
    for (const auto& [key, m] : e.conn) {
        auto [k, p] = key;
        auto& b = block(k, p - 1);
        std::size_t ro = frk(p - 1 - k + 1), co = frk(p - 1);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) b.at(ro + i, co + j) -= m.at(i, j);
    }
    for (const auto& [key, m] : phi.comps) {
        auto [j, p] = key;
        // phi component at source degree p lands in the cone component (j, p-1)
        // mapping the E[1] summand into F.
        auto& b = block(j, p - 1);
        std::size_t co = frk(p - 1);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t c = 0; c < m.cols(); ++c) b.at(i, co + c) += m.at(i, c);
    }
    for (auto& [key, b] : blocks)
        if (!mat_is_zero(b)) out.conn.insert_or_assign(key, std::move(b));
    return out;
}

} // namespace fdolb
