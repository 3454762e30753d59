#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

namespace fdolb {

/// Exponent vector (a_1, ..., a_n) over the formal normal variables z_1..z_n.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : exp_(n, 0) {}
    MultiIndex(std::initializer_list<std::uint32_t> e) : exp_(e) {}

    static MultiIndex unit(std::size_t n, std::size_t j, std::uint32_t k = 1) {
        MultiIndex a(n);
        a.exp_[j] = k;
        return a;
    }

    std::size_t size() const { return exp_.size(); }
    std::uint32_t operator[](std::size_t j) const { return exp_[j]; }
    std::uint32_t& operator[](std::size_t j) { return exp_[j]; }

    /// |a| = sum of exponents.
    std::uint32_t order() const {
        return std::accumulate(exp_.begin(), exp_.end(), std::uint32_t(0));
    }

    MultiIndex operator+(const MultiIndex& o) const {
        MultiIndex s(size());
        for (std::size_t j = 0; j < size(); ++j) s.exp_[j] = exp_[j] + o.exp_[j];
        return s;
    }

    /// Componentwise difference; valid only when *this >= o componentwise.
    MultiIndex operator-(const MultiIndex& o) const {
        MultiIndex s(size());
        for (std::size_t j = 0; j < size(); ++j) s.exp_[j] = exp_[j] - o.exp_[j];
        return s;
    }

    bool dominates(const MultiIndex& o) const {
        for (std::size_t j = 0; j < size(); ++j)
            if (exp_[j] < o[j]) return false;
        return true;
    }

    bool is_zero() const {
        for (auto e : exp_)
            if (e) return false;
        return true;
    }

    auto operator<=>(const MultiIndex&) const = default;

    const std::vector<std::uint32_t>& exponents() const { return exp_; }

    /// a! = a_1! a_2! ... a_n!  (fits in uint64 for the desk-scale orders used here)
    std::uint64_t factorial() const {
        std::uint64_t f = 1;
        for (auto e : exp_)
            for (std::uint32_t k = 2; k <= e; ++k) f *= k;
        return f;
    }

  private:
    std::vector<std::uint32_t> exp_;
};

/// All multi-indices of length n with order <= r, in graded lexicographic order
/// (order-major so that induction on |I| is a simple forward sweep).
inline std::vector<MultiIndex> multi_indices_up_to(std::size_t n, std::uint32_t r) {
    std::vector<MultiIndex> out;
    std::vector<MultiIndex> level{MultiIndex(n)};
    out.push_back(MultiIndex(n));
    for (std::uint32_t ord = 1; ord <= r; ++ord) {
        std::vector<MultiIndex> next;
        // enumerate order-ord indices lexicographically
        MultiIndex a(n);
        // simple recursive enumeration via iterative odometer
        std::vector<std::uint32_t> stack;
        auto emit = [&](auto&& self, std::size_t pos, std::uint32_t rem, MultiIndex cur) -> void {
            if (pos + 1 == n) {
                cur[pos] = rem;
                next.push_back(cur);
                return;
            }
            for (std::uint32_t k = rem; k != std::uint32_t(-1); --k) {
                cur[pos] = k;
                self(self, pos + 1, rem - k, cur);
            }
        };
        if (n == 0) break;
        emit(emit, 0, ord, MultiIndex(n));
        out.insert(out.end(), next.begin(), next.end());
    }
    return out;
}

} // namespace fdolb
