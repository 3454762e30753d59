#pragma once

#include "multi_index.hpp"
#include "sparse_poly.hpp"

namespace fdolb {

/// Monomial w^a wbar^b zbar^c on the base (zbar exponents appear only in the
/// ambient backend). Ordered lexicographically by (a, b, c).
struct BaseMono {
    std::uint32_t w = 0;
    std::uint32_t wb = 0;
    MultiIndex zb; // length n; empty in pure-base contexts

    std::uint32_t degree() const { return w + wb + zb.order(); }
    BaseMono operator+(const BaseMono& o) const { return {w + o.w, wb + o.wb, zb + o.zb}; }
    auto operator<=>(const BaseMono&) const = default;
};

/// Degree-capped polynomial stand-in for the smooth base functions: sparse sum
/// of base monomials of total degree <= d_cap. The cap drops monomials rather
/// than quotienting by an ideal, so algebra laws hold only for inputs whose
/// combined degree budget stays within the cap.
class BasePoly {
  public:
    BasePoly() = default;
    BasePoly(int n, int d_cap) : n_(n), d_cap_(d_cap) {}

    static BasePoly constant(int n, int d_cap, const Scalar& c) {
        BasePoly p(n, d_cap);
        p.add(BaseMono{0, 0, MultiIndex(static_cast<std::size_t>(n))}, c);
        return p;
    }
    static BasePoly one(int n, int d_cap) { return constant(n, d_cap, Scalar(1)); }
    static BasePoly w(int n, int d_cap, std::uint32_t a = 1) {
        BasePoly p(n, d_cap);
        p.add(BaseMono{a, 0, MultiIndex(static_cast<std::size_t>(n))}, Scalar(1));
        return p;
    }
    static BasePoly wbar(int n, int d_cap, std::uint32_t b = 1) {
        BasePoly p(n, d_cap);
        p.add(BaseMono{0, b, MultiIndex(static_cast<std::size_t>(n))}, Scalar(1));
        return p;
    }
    static BasePoly zbar(int n, int d_cap, std::size_t j) {
        BasePoly p(n, d_cap);
        p.add(BaseMono{0, 0, MultiIndex::unit(static_cast<std::size_t>(n), j)}, Scalar(1));
        return p;
    }

    int n() const { return n_; }
    int d_cap() const { return d_cap_; }
    bool is_zero() const { return terms_.is_zero(); }
    const SparseTerms<BaseMono>& terms() const { return terms_; }

    void add(const BaseMono& m, const Scalar& c) {
        if (m.degree() > static_cast<std::uint32_t>(d_cap_)) return;
        terms_.add(m, c);
    }

    BasePoly& operator+=(const BasePoly& o) {
        require_compatible(o);
        terms_ += o.terms_;
        return *this;
    }
    BasePoly& operator-=(const BasePoly& o) {
        require_compatible(o);
        terms_ -= o.terms_;
        return *this;
    }
    BasePoly operator-() const {
        BasePoly out(n_, d_cap_);
        out.terms_ = -terms_;
        return out;
    }
    friend BasePoly operator+(BasePoly a, const BasePoly& b) { return a += b; }
    friend BasePoly operator-(BasePoly a, const BasePoly& b) { return a -= b; }

    friend bool operator==(const BasePoly&, const BasePoly&) = default;

  private:
    void require_compatible(const BasePoly& o) const {
        if (n_ != o.n_ || d_cap_ != o.d_cap_) throw ModelMismatch("base polynomial caps differ");
    }
    friend BasePoly base_mul(const BasePoly&, const BasePoly&);

    int n_ = 0;
    int d_cap_ = 0;
    SparseTerms<BaseMono> terms_;
};

/// Polynomial product with monomials of degree > d_cap dropped.
inline BasePoly base_mul(const BasePoly& p, const BasePoly& q) {
    p.require_compatible(q);
    BasePoly out(p.n(), p.d_cap());
    for (const auto& [a, ca] : p.terms().terms())
        for (const auto& [b, cb] : q.terms().terms()) out.add(a + b, ca * cb);
    return out;
}

} // namespace fdolb
