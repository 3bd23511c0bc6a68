#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetasph {

using Rat = mpq_class;
using Cplx = std::complex<double>;

// Gaussian rational: exact coefficient field for the group-ring algebra.
struct GRat {
    Rat re{0};
    Rat im{0};

    GRat() = default;
    GRat(long n) : re(n) {}
    GRat(const Rat& r) : re(r) {}
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GRat operator-() const { return GRat(-re, -im); }
    GRat& operator+=(const GRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GRat& operator-=(const GRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GRat operator+(GRat a, const GRat& b) { return a += b; }
    friend GRat operator-(GRat a, const GRat& b) { return a -= b; }
    friend GRat operator*(const GRat& a, const GRat& b) {
        return GRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    GRat& operator*=(const GRat& o) { return *this = *this * o; }
    friend GRat operator/(const GRat& a, const GRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GRat: division by zero");
        return GRat((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    GRat& operator/=(const GRat& o) { return *this = *this / o; }
    friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }

    Cplx to_complex() const { return Cplx(re.get_d(), im.get_d()); }

    std::string str() const {
        std::string s = re.get_str();
        if (im != 0) {
            s += (im > 0 ? "+" : "") + im.get_str() + "i";
        }
        return s;
    }
};

inline double to_double(const Rat& r) { return r.get_d(); }

// mpq_class(n,d) does not canonicalize; always build fractions through this.
inline Rat rat_frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Scalar adaptors so series/evaluator code can run in exact or double mode.
inline Cplx scalar_cast(const GRat& x, const Cplx*) { return x.to_complex(); }
inline const GRat& scalar_cast(const GRat& x, const GRat*) { return x; }
inline Cplx scalar_cast(const Rat& x, const Cplx*) { return Cplx(x.get_d(), 0.0); }
inline GRat scalar_cast(const Rat& x, const GRat*) { return GRat(x); }

inline bool scalar_is_zero(const Cplx& x) { return x == Cplx(0.0, 0.0); }
inline bool scalar_is_zero(const GRat& x) { return x.is_zero(); }

using RatVec = std::vector<Rat>;

}  // namespace thetasph
