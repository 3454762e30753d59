#pragma once

#include "quasi_iso.hpp"

namespace fdolb {

namespace detail {

/// Ordered basis of the degree-k part of the hom complex on the exact backend:
/// tuples (source degree p, target row a, source column b, monomial index).
struct HomBasisEntry {
    int p;
    std::size_t a, b, mono;
};

inline std::vector<HomBasisEntry> hom_basis(const CohesiveModule& e, const CohesiveModule& f,
                                            int k, std::size_t n_monos) {
    std::vector<HomBasisEntry> basis;
    for (const auto& [p, re] : e.ranks) {
        std::size_t rf = f.rank(p + k);
        if (!re || !rf) continue;
        for (std::size_t a = 0; a < rf; ++a)
            for (std::size_t b = 0; b < re; ++b)
                for (std::size_t m = 0; m < n_monos; ++m) basis.push_back({p, a, b, m});
    }
    return basis;
}

inline std::vector<Scalar> hom_coordinates(const HomElement& phi,
                                           const std::vector<HomBasisEntry>& basis,
                                           const std::map<MultiIndex, std::size_t>& idx,
                                           const std::vector<MultiIndex>& monos) {
    std::vector<Scalar> v(basis.size());
    std::map<std::tuple<int, std::size_t, std::size_t, std::size_t>, std::size_t> pos;
    for (std::size_t i = 0; i < basis.size(); ++i)
        pos[{basis[i].p, basis[i].a, basis[i].b, basis[i].mono}] = i;
    for (const auto& [key, m] : phi.comps) {
        if (key.first != 0) throw ShapeMismatch("positive-degree hom component on m=0 backend");
        int p = key.second;
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) {
                Coeff c = m.at(a, b).component(0);
                for (const auto& [mono, s] : c.terms().terms()) {
                    if (mono.base.degree() != 0)
                        throw InfiniteDimensionalBackend("base monomials in hom coefficient");
                    auto it = pos.find({p, a, b, idx.at(mono.z)});
                    if (it == pos.end()) throw ShapeMismatch("hom coordinate outside basis");
                    v[it->second] += s;
                }
            }
    }
    return v;
}

} // namespace detail

/// Dimensions of H^k(P_A(E, F)) by exact rank computation on the hom complex.
inline ComplexReport ext_dims(const CohesiveModule& e, const CohesiveModule& f) {
    if (e.cfg.m != 0 || f.cfg.m != 0)
        throw InfiniteDimensionalBackend("ext_dims needs the m=0 backend");
    require_same(e.cfg, f.cfg);
    auto monos = quotient_basis(e.cfg);
    auto idx = detail::index_of(monos);
    if (e.ranks.empty() || f.ranks.empty()) return {};

    int lo = f.min_degree() - e.max_degree();
    int hi = f.max_degree() - e.min_degree();
    std::map<int, std::size_t> dims;
    std::map<int, Matrix<Scalar>> diff;
    std::map<int, std::vector<detail::HomBasisEntry>> bases;
    for (int k = lo; k <= hi + 1; ++k) bases[k] = detail::hom_basis(e, f, k, monos.size());
    for (int k = lo; k <= hi; ++k) {
        dims[k] = bases[k].size();
        Matrix<Scalar> d(bases[k + 1].size(), bases[k].size());
        for (std::size_t col = 0; col < bases[k].size(); ++col) {
            const auto& entry = bases[k][col];
            HomElement phi;
            phi.source = e;
            phi.target = f;
            phi.degree = k;
            FormMatrix m = zero_form_matrix(e.cfg, e.space, f.rank(entry.p + k), e.rank(entry.p));
            m.at(entry.a, entry.b) = TruncatedForm::function(
                e.space, Coeff::monomial(e.cfg, {BaseMono{0, 0, MultiIndex(std::size_t(e.cfg.n))},
                                                 monos[entry.mono]}));
            phi.set_component(0, entry.p, std::move(m));
            auto image = detail::hom_coordinates(hom_differential(phi), bases[k + 1], idx, monos);
            for (std::size_t row = 0; row < image.size(); ++row) d.at(row, col) = image[row];
        }
        diff[k] = std::move(d);
    }
    return make_complex_report(dims, diff);
}

} // namespace fdolb
