#pragma once

#include "form.hpp"

namespace fdolb {

/// Taylor homomorphism T_r: drop dzb-normal components, apply the normal
/// derivatives and restrict to z = zbar = 0, tensor with z^alpha / alpha!.
/// Termwise this keeps exactly the zbar-free monomials of z-order <= r, with
/// the polynomial z-part reborn as the formal variable.
inline TruncatedForm taylor_map(const TruncatedForm& a, int r) {
    if (a.space() != Space::Ambient) throw QuotientSpaceUnsupported("taylor_map needs ambient forms");
    ModelConfig cfg = a.config();
    ModelConfig out_cfg = cfg;
    out_cfg.r = r;
    TruncatedForm out(out_cfg, Space::Quotient);
    for (const auto& [mask, c] : a.components()) {
        if (mask & (dwb_bit(cfg) - 1)) continue;
        Coeff oc(out_cfg);
        for (const auto& [mono, s] : c.terms().terms()) {
            if (mono.base.zb.order() > 0) continue;
            if (mono.z.order() > std::uint32_t(r)) continue;
            oc.add(mono, s);
        }
        out.add_component(mask, oc);
    }
    return out;
}

/// Membership in the dg-ideal a^k_r, the kernel of T_r.
inline bool ideal_member(const TruncatedForm& a, int r) { return taylor_map(a, r).is_zero(); }

} // namespace fdolb
