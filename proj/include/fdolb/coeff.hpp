#pragma once

#include "base_poly.hpp"
#include "formal_coeff.hpp"
#include "model.hpp"

namespace fdolb {

/// Full function monomial w^a wbar^b zbar^c z^alpha. Lexicographic order on
/// (base, z) matches the serialized exponent-list layout [w, wb, zb..., z...].
struct FnMono {
    BaseMono base;
    MultiIndex z;

    FnMono operator+(const FnMono& o) const { return {base + o.base, z + o.z}; }
    auto operator<=>(const FnMono&) const = default;
};

/// Coefficient of one form component: an element of BasePoly (x)
/// TruncatedFormalCoeff, truncated by d_cap on the base part and by r on the
/// formal part.
class Coeff {
  public:
    Coeff() = default;
    explicit Coeff(ModelConfig cfg) : cfg_(cfg) {}

    static Coeff constant(ModelConfig cfg, const Scalar& c) {
        Coeff p(cfg);
        p.add(FnMono{BaseMono{0, 0, MultiIndex(std::size_t(cfg.n))},
                     MultiIndex(std::size_t(cfg.n))},
              c);
        return p;
    }
    static Coeff one(ModelConfig cfg) { return constant(cfg, Scalar(1)); }
    static Coeff monomial(ModelConfig cfg, const FnMono& m, const Scalar& c = Scalar(1)) {
        Coeff p(cfg);
        p.add(m, c);
        return p;
    }
    static FnMono unit_mono(ModelConfig cfg) {
        return {BaseMono{0, 0, MultiIndex(std::size_t(cfg.n))}, MultiIndex(std::size_t(cfg.n))};
    }
    static Coeff z(ModelConfig cfg, std::size_t j, std::uint32_t k = 1) {
        auto m = unit_mono(cfg);
        m.z[j] = k;
        return monomial(cfg, m);
    }
    static Coeff zbar(ModelConfig cfg, std::size_t j, std::uint32_t k = 1) {
        auto m = unit_mono(cfg);
        m.base.zb[j] = k;
        return monomial(cfg, m);
    }
    static Coeff w(ModelConfig cfg, std::uint32_t a = 1) {
        auto m = unit_mono(cfg);
        m.base.w = a;
        return monomial(cfg, m);
    }
    static Coeff wbar(ModelConfig cfg, std::uint32_t b = 1) {
        auto m = unit_mono(cfg);
        m.base.wb = b;
        return monomial(cfg, m);
    }

    const ModelConfig& config() const { return cfg_; }
    bool is_zero() const { return terms_.is_zero(); }
    const SparseTerms<FnMono>& terms() const { return terms_; }
    Scalar coeff(const FnMono& m) const { return terms_.coeff(m); }

    void add(const FnMono& m, const Scalar& c) {
        if (m.base.degree() > static_cast<std::uint32_t>(cfg_.d_cap)) return;
        if (m.z.order() > static_cast<std::uint32_t>(cfg_.r)) return;
        terms_.add(m, c);
    }

    Coeff& operator+=(const Coeff& o) {
        require_same(cfg_, o.cfg_);
        terms_ += o.terms_;
        return *this;
    }
    Coeff& operator-=(const Coeff& o) {
        require_same(cfg_, o.cfg_);
        terms_ -= o.terms_;
        return *this;
    }
    Coeff operator-() const {
        Coeff out(cfg_);
        out.terms_ = -terms_;
        return out;
    }
    Coeff& operator*=(const Scalar& s) {
        terms_ *= s;
        return *this;
    }
    friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
    friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
    friend Coeff operator*(Coeff a, const Scalar& s) { return a *= s; }

    friend Coeff operator*(const Coeff& p, const Coeff& q) {
        require_same(p.cfg_, q.cfg_);
        Coeff out(p.cfg_);
        for (const auto& [a, ca] : p.terms_.terms())
            for (const auto& [b, cb] : q.terms_.terms()) out.add(a + b, ca * cb);
        return out;
    }

    friend bool operator==(const Coeff&, const Coeff&) = default;

    enum class Var { W, Wbar, Zbar, Z };

    /// Partial derivative with respect to one variable (j indexes z/zbar).
    Coeff derivative(Var v, std::size_t j = 0) const {
        Coeff out(cfg_);
        for (const auto& [m, c] : terms_.terms()) {
            FnMono d = m;
            std::uint32_t e = 0;
            switch (v) {
                case Var::W: e = m.base.w; if (e) --d.base.w; break;
                case Var::Wbar: e = m.base.wb; if (e) --d.base.wb; break;
                case Var::Zbar: e = m.base.zb[j]; if (e) --d.base.zb[j]; break;
                case Var::Z: e = m.z[j]; if (e) --d.z[j]; break;
            }
            if (e) out.add(d, c * Scalar(long(e)));
        }
        return out;
    }

    /// True if no zbar variable occurs (required of quotient-space coefficients).
    bool zbar_free() const {
        for (const auto& [m, c] : terms_.terms())
            if (m.base.zb.order() > 0) return false;
        return true;
    }

  private:
    ModelConfig cfg_;
    SparseTerms<FnMono> terms_;
};

} // namespace fdolb
