#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

#include "errors.hpp"

namespace fdolb {

using Rational = mpq_class;

/// Exact element of Q(i): a + b*i with a, b rational in canonical reduced form.
/// All arithmetic is exact; there is no rounding anywhere in the coefficient core.
class GaussianRational {
  public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(Rational re) : re_(std::move(re)), im_(0) { canonicalize(); }
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        canonicalize();
    }
    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
        return a += b;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
        return a -= b;
    }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) {
        return a *= b;
    }

    /// Multiplicative inverse: conj / |.|^2.
    GaussianRational inv() const {
        if (is_zero()) throw DivisionByZero();
        Rational norm = re_ * re_ + im_ * im_;
        return {re_ / norm, -im_ / norm};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inv();
    }

    GaussianRational conj() const { return {re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::string str() const {
        return re_.get_str() + (sgn(im_) >= 0 ? "+" : "") + im_.get_str() + "i";
    }
    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& s) {
        return os << s.str();
    }

  private:
    void canonicalize() {
        re_.canonicalize();
        im_.canonicalize();
    }

    Rational re_, im_;
};

using Scalar = GaussianRational;

inline Scalar scalar_from_parts(long rn, long rd, long in, long id) {
    return {Rational(rn, rd), Rational(in, id)};
}

} // namespace fdolb
