#pragma once

#include <algorithm>

#include "hom.hpp"

namespace fdolb {

/// Dimensions of a finite cochain complex over Q(i): per degree the space
/// dimension, kernel, image landing there and cohomology.
struct ComplexReport {
    std::map<int, std::size_t> dims;
    std::map<int, std::size_t> kernels;
    std::map<int, std::size_t> images;
    std::map<int, std::size_t> cohomology;

    std::size_t h(int k) const {
        auto it = cohomology.find(k);
        return it == cohomology.end() ? 0 : it->second;
    }
    bool acyclic() const {
        for (const auto& [k, d] : cohomology)
            if (d) return false;
        return true;
    }
    long euler_characteristic() const {
        long chi = 0;
        for (const auto& [k, d] : dims) chi += (k % 2) ? -long(d) : long(d);
        return chi;
    }
};

/// Assemble a report from space dimensions and differential matrices d_k:
/// V^k -> V^{k+1} by exact rank computation.
inline ComplexReport make_complex_report(const std::map<int, std::size_t>& dims,
                                         const std::map<int, Matrix<Scalar>>& diff) {
    ComplexReport rep;
    rep.dims = dims;
    std::map<int, std::size_t> rk;
    for (const auto& [k, d] : diff) rk[k] = rank(d);
    for (const auto& [k, dim] : dims) {
        std::size_t out_rank = rk.count(k) ? rk[k] : 0;
        std::size_t in_rank = rk.count(k - 1) ? rk[k - 1] : 0;
        rep.kernels[k] = dim - out_rank;
        rep.images[k] = in_rank;
        rep.cohomology[k] = dim - out_rank - in_rank;
    }
    return rep;
}

/// Monomial basis z^alpha, |alpha| <= r, of the exact-backend coefficient ring.
inline std::vector<MultiIndex> quotient_basis(const ModelConfig& cfg) {
    if (cfg.m != 0) throw InfiniteDimensionalBackend("exact basis needs the m=0 backend");
    return multi_indices_up_to(cfg.n, cfg.r);
}

namespace detail {

inline std::map<MultiIndex, std::size_t> index_of(const std::vector<MultiIndex>& basis) {
    std::map<MultiIndex, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
    return idx;
}

/// Matrix of multiplication-by-c acting on the monomial basis (truncated ring
/// product), as an N x N block over Q(i).
inline void add_mult_block(Matrix<Scalar>& out, std::size_t row0, std::size_t col0,
                           const Coeff& c, const std::vector<MultiIndex>& basis,
                           const std::map<MultiIndex, std::size_t>& idx, int r) {
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (const auto& [mono, s] : c.terms().terms()) {
            if (mono.base.degree() != 0)
                throw InfiniteDimensionalBackend("base monomials in exact-backend coefficient");
            MultiIndex prod = mono.z + basis[b];
            if (prod.order() > std::uint32_t(r)) continue;
            out.at(row0 + idx.at(prod), col0 + b) += s;
        }
}

} // namespace detail

/// Underlying complex of an exact-backend module: V^p = rank(p) copies of the
/// coefficient ring, differential from the k=0 connection component.
inline void underlying_complex(const CohesiveModule& e, std::map<int, std::size_t>& dims,
                               std::map<int, Matrix<Scalar>>& diff) {
    auto basis = quotient_basis(e.cfg);
    auto idx = detail::index_of(basis);
    std::size_t n = basis.size();
    for (const auto& [p, r] : e.ranks)
        if (r) dims[p] = r * n;
    for (const auto& [key, m] : e.conn) {
        if (key.first != 0) throw ShapeMismatch("positive-degree form component on m=0 backend");
        int p = key.second;
        Matrix<Scalar> d(e.rank(p + 1) * n, e.rank(p) * n);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                detail::add_mult_block(d, i * n, j * n, m.at(i, j).component(0), basis, idx,
                                       e.cfg.r);
        diff[p] = std::move(d);
    }
}

inline ComplexReport underlying_report(const CohesiveModule& e) {
    std::map<int, std::size_t> dims;
    std::map<int, Matrix<Scalar>> diff;
    underlying_complex(e, dims, diff);
    return make_complex_report(dims, diff);
}

/// Prop.-2.9 test: a closed degree-0 morphism is a homotopy equivalence iff
/// its degree-0 component is a quasi-isomorphism of the underlying complexes,
/// checked through acyclicity of the underlying mapping cone.
inline bool is_homotopy_equivalence(const HomElement& phi) {
    if (phi.degree != 0) throw WrongDegree("homotopy equivalence test needs degree 0");
    if (!hom_differential(phi).is_zero()) throw NotClosed();
    return underlying_report(cone(phi)).acyclic();
}

} // namespace fdolb
