#ifndef FOLFORGE_SCALAR_HPP
#define FOLFORGE_SCALAR_HPP

#include <gmpxx.h>

#include <string>

#include "folforge/base.hpp"

namespace folforge {

using Rat = mpq_class;

// Exact field element of Q or Q(i), canonically represented as re + im*i
// with both parts reduced rationals and positive denominators (mpq keeps
// that invariant).  A value is "rational" exactly when im == 0, so equal
// values always have bit-identical representations.
class Scalar {
  public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(const Rat& r) : re_(r), im_(0) {}
    Scalar(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar of_fraction(long num, long den) {
        require(den != 0, "ZeroDenominator", "scalar with denominator 0");
        Rat r(num, den);
        r.canonicalize();
        return Scalar(r);
    }
    static Scalar i() { return Scalar(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }
    bool is_one() const { return im_ == 0 && re_ == 1; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar operator+(const Scalar& o) const { return Scalar(re_ + o.re_, im_ + o.im_); }
    Scalar operator-(const Scalar& o) const { return Scalar(re_ - o.re_, im_ - o.im_); }
    Scalar operator*(const Scalar& o) const {
        if (im_ == 0 && o.im_ == 0) return Scalar(re_ * o.re_);
        return Scalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    Scalar inverse() const {
        require(!is_zero(), "DivisionByZero", "inverse of zero scalar");
        if (im_ == 0) return Scalar(1 / re_);
        Rat n = re_ * re_ + im_ * im_;
        return Scalar(re_ / n, -im_ / n);
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar pow(unsigned k) const {
        Scalar r(1), b(*this);
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    // size measure used by the elimination pivot rule
    size_t bit_size() const {
        return mpz_sizeinbase(re_.get_num_mpz_t(), 2) + mpz_sizeinbase(re_.get_den_mpz_t(), 2) +
               mpz_sizeinbase(im_.get_num_mpz_t(), 2) + mpz_sizeinbase(im_.get_den_mpz_t(), 2);
    }

    // deterministic total order (for canonical pivoting / sorting only,
    // no arithmetic meaning over Q(i))
    int cmp(const Scalar& o) const {
        int c = ::cmp(re_, o.re_);
        if (c != 0) return c;
        return ::cmp(im_, o.im_);
    }

    // canonical text: "a/b" or "a/b+c/d*i" (denominator omitted when 1)
    std::string str() const {
        auto rat_str = [](const Rat& r) {
            std::string s = r.get_num().get_str();
            if (r.get_den() != 1) s += "/" + r.get_den().get_str();
            return s;
        };
        if (im_ == 0) return rat_str(re_);
        std::string s = rat_str(re_);
        s += (im_ < 0) ? "-" : "+";
        Rat a = abs(im_);
        s += rat_str(a) + "*i";
        return s;
    }

  private:
    Rat re_, im_;
};

inline Scalar operator*(long n, const Scalar& s) { return Scalar(n) * s; }

} // namespace folforge

#endif
