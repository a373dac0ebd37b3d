#ifndef BICX_SCALAR_HPP
#define BICX_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "bicx/errors.hpp"

namespace bicx {

using Rational = boost::multiprecision::cpp_rational;

/// Exact Gaussian rational a + b*i with rational a, b.
///
/// Text form: "a/b+c/d*i" with zero parts omitted and unit denominators and
/// unit imaginary coefficients contracted, e.g. "0", "1", "-2/3", "i", "-i",
/// "1/2+3*i", "2-1/5*i".
class Scalar {
public:
    Scalar() = default;
    Scalar(int re) : re_(re) {}                     // NOLINT: implicit by design
    Scalar(const Rational& re) : re_(re) {}         // NOLINT
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(0, 1); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        // real times real is the dominant case and skips the cross terms
        if (im_.is_zero() && o.im_.is_zero()) {
            re_ *= o.re_;
            return *this;
        }
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw error("division by zero scalar");
        Rational n = o.re_ * o.re_ + o.im_ * o.im_;
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Renders the canonical text form.
    std::string str() const;

    /// Parses the text form; throws parse_error on any deviation.
    static Scalar parse(const std::string& text);

private:
    Rational re_ = 0;
    Rational im_ = 0;
};

} // namespace bicx

#endif
