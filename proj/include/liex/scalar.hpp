#pragma once

// Gaussian rationals: a + b i with a, b arbitrary-precision rationals.

#include <gmpxx.h>

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace liex {

class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}
    Scalar(long v) : re_(v) {}
    explicit Scalar(mpq_class re, mpq_class im = 0);

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
    // p/q with q != 0
    static Scalar ratio(long p, long q);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_, raw_tag{}); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_, raw_tag{}); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // lexicographic on (re, im); only used for deterministic ordering
    friend bool operator<(const Scalar& a, const Scalar& b) {
        int c = cmp(a.re_, b.re_);
        return c < 0 || (c == 0 && a.im_ < b.im_);
    }

    std::string str() const;
    // accepts "p", "p/q", "p/q i", "i", "-i", "p/q+r/s i", "p/q-r/s i"
    static Scalar parse(std::string_view text);

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    // throws std::domain_error when the imaginary part is nonzero
    double to_double() const;

private:
    struct raw_tag {};
    Scalar(mpq_class re, mpq_class im, raw_tag) : re_(std::move(re)), im_(std::move(im)) {}

    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

inline Scalar conj(const Scalar& s) { return s.conj(); }

// exact square root in Q(i) if one exists
bool exact_sqrt(const Scalar& s, Scalar& root);

}  // namespace liex

namespace Eigen {

template <>
struct NumTraits<liex::Scalar> : GenericNumTraits<liex::Scalar> {
    using Real = liex::Scalar;
    using NonInteger = liex::Scalar;
    using Nested = liex::Scalar;
    using Literal = liex::Scalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 100,
        MulCost = 200
    };
    static inline Real epsilon() { return liex::Scalar(0); }
    static inline Real dummy_precision() { return liex::Scalar(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
