#pragma once

#include "multi_index.hpp"
#include "sparse_poly.hpp"

namespace fdolb {

/// Element of the truncated formal algebra C[z_1..z_n]/(z_1..z_n)^{r+1}:
/// a sparse sum of z^alpha with |alpha| <= r and Q(i) coefficients.
class TruncatedFormalCoeff {
  public:
    TruncatedFormalCoeff() = default;
    TruncatedFormalCoeff(int n, int r) : n_(n), r_(r) {}

    static TruncatedFormalCoeff constant(int n, int r, const Scalar& c) {
        TruncatedFormalCoeff p(n, r);
        p.add(MultiIndex(static_cast<std::size_t>(n)), c);
        return p;
    }
    static TruncatedFormalCoeff one(int n, int r) { return constant(n, r, Scalar(1)); }
    static TruncatedFormalCoeff variable(int n, int r, std::size_t j) {
        TruncatedFormalCoeff p(n, r);
        p.add(MultiIndex::unit(static_cast<std::size_t>(n), j), Scalar(1));
        return p;
    }

    int n() const { return n_; }
    int r() const { return r_; }
    bool is_zero() const { return terms_.is_zero(); }
    const SparseTerms<MultiIndex>& terms() const { return terms_; }

    /// Insert a term; monomials beyond the truncation order are discarded.
    void add(const MultiIndex& a, const Scalar& c) {
        if (a.order() > static_cast<std::uint32_t>(r_)) return;
        terms_.add(a, c);
    }

    TruncatedFormalCoeff& operator+=(const TruncatedFormalCoeff& o) {
        require_compatible(o);
        terms_ += o.terms_;
        return *this;
    }
    TruncatedFormalCoeff& operator-=(const TruncatedFormalCoeff& o) {
        require_compatible(o);
        terms_ -= o.terms_;
        return *this;
    }
    TruncatedFormalCoeff operator-() const {
        TruncatedFormalCoeff out(n_, r_);
        out.terms_ = -terms_;
        return out;
    }
    friend TruncatedFormalCoeff operator+(TruncatedFormalCoeff a, const TruncatedFormalCoeff& b) {
        return a += b;
    }
    friend TruncatedFormalCoeff operator-(TruncatedFormalCoeff a, const TruncatedFormalCoeff& b) {
        return a -= b;
    }

    friend bool operator==(const TruncatedFormalCoeff&, const TruncatedFormalCoeff&) = default;

  private:
    void require_compatible(const TruncatedFormalCoeff& o) const {
        if (n_ != o.n_ || r_ != o.r_) throw ModelMismatch("truncated formal algebras differ");
    }
    friend TruncatedFormalCoeff formal_mul(const TruncatedFormalCoeff&,
                                           const TruncatedFormalCoeff&);

    int n_ = 0;
    int r_ = 0;
    SparseTerms<MultiIndex> terms_;
};

/// Product in C[z]/(z)^{r+1}: all monomials with |alpha| > r are discarded,
/// which is exactly the quotient by the ideal (z_1..z_n)^{r+1}.
inline TruncatedFormalCoeff formal_mul(const TruncatedFormalCoeff& p,
                                       const TruncatedFormalCoeff& q) {
    p.require_compatible(q);
    TruncatedFormalCoeff out(p.n(), p.r());
    for (const auto& [a, ca] : p.terms().terms())
        for (const auto& [b, cb] : q.terms().terms()) out.add(a + b, ca * cb);
    return out;
}

} // namespace fdolb
