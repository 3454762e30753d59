#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "coeff.hpp"

namespace fdolb {

/// Antiholomorphic generator subset as a bitmask: bit i (0 <= i < n) is dzb_{i+1},
/// bit n is dwb. Stored sorted by construction.
using GenMask = std::uint32_t;

inline int gen_degree(GenMask m) { return std::popcount(m); }

inline GenMask dwb_bit(const ModelConfig& cfg) { return GenMask(1) << cfg.n; }

/// Sign of inserting generator g on the left of the sorted subset mask:
/// one transposition per generator already present below g.
inline int insert_sign(GenMask mask, unsigned g) {
    return (std::popcount(mask & ((GenMask(1) << g) - 1)) & 1) ? -1 : 1;
}

/// Sign of concatenating sorted subsets a, b (disjoint) and resorting:
/// one transposition per pair (x in a, y in b) with x > y.
inline int merge_sign(GenMask a, GenMask b) {
    int swaps = 0;
    for (unsigned g = 0; (GenMask(1) << g) <= b; ++g)
        if (b & (GenMask(1) << g)) swaps += std::popcount(a & ~((GenMask(1) << (g + 1)) - 1));
    return (swaps & 1) ? -1 : 1;
}

/// Element of the finite model of A^{0,*}: sparse map from generator subsets to
/// truncated coefficients. Quotient-space forms carry no dzb generators and no
/// zbar variables.
class TruncatedForm {
  public:
    TruncatedForm() = default;
    TruncatedForm(ModelConfig cfg, Space space) : cfg_(cfg), space_(space) {}

    static TruncatedForm zero(ModelConfig cfg, Space space) { return {cfg, space}; }
    static TruncatedForm function(Space space, const Coeff& c) {
        TruncatedForm f(c.config(), space);
        f.add_component(0, c);
        return f;
    }
    static TruncatedForm generator(ModelConfig cfg, Space space, unsigned g) {
        TruncatedForm f(cfg, space);
        f.add_component(GenMask(1) << g, Coeff::one(cfg));
        return f;
    }

    const ModelConfig& config() const { return cfg_; }
    Space space() const { return space_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<GenMask, Coeff>& components() const { return comps_; }
    Coeff component(GenMask m) const {
        auto it = comps_.find(m);
        return it == comps_.end() ? Coeff(cfg_) : it->second;
    }

    /// True if every component has generator degree d.
    bool is_homogeneous(int d) const {
        for (const auto& [m, c] : comps_)
            if (gen_degree(m) != d) return false;
        return true;
    }

    void add_component(GenMask mask, const Coeff& c) {
        require_same(cfg_, c.config());
        if (space_ == Space::Quotient) {
            if (mask & (dwb_bit(cfg_) - 1))
                throw QuotientSpaceUnsupported("dzb generator in quotient form");
            if (!c.zbar_free())
                throw QuotientSpaceUnsupported("zbar variable in quotient form");
        }
        if (cfg_.m == 0 && (mask & dwb_bit(cfg_)))
            throw QuotientSpaceUnsupported("dwb generator with zero-dimensional base");
        if (c.is_zero()) return;
        auto [it, inserted] = comps_.try_emplace(mask, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    TruncatedForm& operator+=(const TruncatedForm& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.comps_) add_component(m, c);
        return *this;
    }
    TruncatedForm& operator-=(const TruncatedForm& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.comps_) add_component(m, -c);
        return *this;
    }
    TruncatedForm operator-() const {
        TruncatedForm out(cfg_, space_);
        for (const auto& [m, c] : comps_) out.comps_.emplace(m, -c);
        return out;
    }
    TruncatedForm& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            comps_.clear();
            return *this;
        }
        for (auto& [m, c] : comps_) c *= s;
        return *this;
    }
    friend TruncatedForm operator+(TruncatedForm a, const TruncatedForm& b) { return a += b; }
    friend TruncatedForm operator-(TruncatedForm a, const TruncatedForm& b) { return a -= b; }
    friend TruncatedForm operator*(TruncatedForm a, const Scalar& s) { return a *= s; }

    friend bool operator==(const TruncatedForm&, const TruncatedForm&) = default;

    void require_compatible(const TruncatedForm& o) const {
        require_same(cfg_, o.cfg_);
        if (space_ != o.space_) throw ModelMismatch("form spaces differ");
    }

  private:
    ModelConfig cfg_;
    Space space_ = Space::Ambient;
    std::map<GenMask, Coeff> comps_;
};

/// Wedge product with the Koszul merge sign on generator subsets.
inline TruncatedForm wedge(const TruncatedForm& a, const TruncatedForm& b) {
    a.require_compatible(b);
    TruncatedForm out(a.config(), a.space());
    for (const auto& [ma, ca] : a.components())
        for (const auto& [mb, cb] : b.components()) {
            if (ma & mb) continue;
            Coeff c = ca * cb;
            if (merge_sign(ma, mb) < 0) c = -c;
            out.add_component(ma | mb, c);
        }
    return out;
}

/// dbar = sum_i dzb_i d/dzb_i + dwb d/dwb on the ambient model; the dzb terms
/// are absent on the quotient model and everything vanishes when m = 0.
inline TruncatedForm dbar(const TruncatedForm& a) {
    const auto& cfg = a.config();
    TruncatedForm out(cfg, a.space());
    for (const auto& [mask, c] : a.components()) {
        if (a.space() == Space::Ambient)
            for (unsigned i = 0; i < unsigned(cfg.n); ++i) {
                if (mask & (GenMask(1) << i)) continue;
                Coeff d = c.derivative(Coeff::Var::Zbar, i);
                if (d.is_zero()) continue;
                if (insert_sign(mask, i) < 0) d = -d;
                out.add_component(mask | (GenMask(1) << i), d);
            }
        if (cfg.m == 1 && !(mask & dwb_bit(cfg))) {
            Coeff d = c.derivative(Coeff::Var::Wbar);
            if (d.is_zero()) continue;
            if (insert_sign(mask, unsigned(cfg.n)) < 0) d = -d;
            out.add_component(mask | dwb_bit(cfg), d);
        }
    }
    return out;
}

/// The (1,0)-differential, one component form per holomorphic direction:
/// slots 0..n-1 are d/dz_j, slot n (present when m = 1) is d/dw.
inline std::vector<TruncatedForm> del_hol(const TruncatedForm& a) {
    if (a.space() != Space::Ambient) throw QuotientSpaceUnsupported("del_hol needs ambient forms");
    const auto& cfg = a.config();
    std::vector<TruncatedForm> out(std::size_t(cfg.n + cfg.m), TruncatedForm(cfg, Space::Ambient));
    for (const auto& [mask, c] : a.components()) {
        for (unsigned j = 0; j < unsigned(cfg.n); ++j)
            out[j].add_component(mask, c.derivative(Coeff::Var::Z, j));
        if (cfg.m == 1) out[std::size_t(cfg.n)].add_component(mask, c.derivative(Coeff::Var::W));
    }
    return out;
}

/// Polynomial (1,0) vector field: one coefficient per d/dz_j plus d/dw when m=1.
struct PolyVectorField {
    ModelConfig cfg;
    std::vector<Coeff> comps; // size n + m

    static PolyVectorField zero(ModelConfig cfg) {
        return {cfg, std::vector<Coeff>(std::size_t(cfg.n + cfg.m), Coeff(cfg))};
    }
    static PolyVectorField direction(ModelConfig cfg, std::size_t slot) {
        auto v = zero(cfg);
        v.comps.at(slot) = Coeff::one(cfg);
        return v;
    }
};

/// Lie derivative along V: contraction of del_hol(a) with the field components,
/// i.e. L_V a = iota_V del a.
inline TruncatedForm lie_derivative(const PolyVectorField& V, const TruncatedForm& a) {
    require_same(V.cfg, a.config());
    auto legs = del_hol(a);
    TruncatedForm out(a.config(), a.space());
    for (std::size_t j = 0; j < legs.size(); ++j)
        for (const auto& [mask, c] : legs[j].components()) out.add_component(mask, V.comps[j] * c);
    return out;
}

/// Lie derivative along a form-valued field W (e.g. dbar V), whose components
/// are (0,k)-forms per holomorphic slot: L_W a = sum_j W_j wedge (del a)_j.
inline TruncatedForm lie_derivative_form(const std::vector<TruncatedForm>& W,
                                         const TruncatedForm& a) {
    auto legs = del_hol(a);
    if (W.size() != legs.size()) throw ShapeMismatch("vector field slot count");
    TruncatedForm out(a.config(), a.space());
    for (std::size_t j = 0; j < legs.size(); ++j) out += wedge(W[j], legs[j]);
    return out;
}

/// dbar applied slotwise to a polynomial vector field.
inline std::vector<TruncatedForm> dbar_field(const PolyVectorField& V) {
    std::vector<TruncatedForm> out;
    out.reserve(V.comps.size());
    for (const auto& c : V.comps)
        out.push_back(dbar(TruncatedForm::function(Space::Ambient, c)));
    return out;
}

} // namespace fdolb
