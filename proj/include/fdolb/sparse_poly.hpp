#pragma once

#include <map>

#include "scalar.hpp"

namespace fdolb {

/// Sparse canonical term store: sorted monomial keys, no explicit zeros,
/// so equality is structural.
template <class Mono>
class SparseTerms {
  public:
    using map_type = std::map<Mono, Scalar>;

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const map_type& terms() const { return terms_; }

    void add(const Mono& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SparseTerms& operator+=(const SparseTerms& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    SparseTerms& operator-=(const SparseTerms& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    SparseTerms operator-() const {
        SparseTerms out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }
    SparseTerms& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    Scalar coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    friend bool operator==(const SparseTerms&, const SparseTerms&) = default;

  private:
    map_type terms_;
};

} // namespace fdolb
