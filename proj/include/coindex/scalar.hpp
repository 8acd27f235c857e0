#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace coindex {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct computation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gaussian rational a + b*i with arbitrary-precision rational parts.
struct GaussRat {
    mpq_class re;
    mpq_class im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long v) : re(v), im(0) {}
    GaussRat(const mpq_class& r) : re(r), im(0) {}
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat zero() { return GaussRat(); }
    static GaussRat one() { return GaussRat(1); }
    static GaussRat i() { return GaussRat(mpq_class(0), mpq_class(1)); }
    static GaussRat from_long(long n, long d = 1) {
        mpq_class q(n, d);
        q.canonicalize();
        return GaussRat(q);
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat operator-() const { return GaussRat(-re, -im); }
    GaussRat operator+(const GaussRat& o) const { return GaussRat(re + o.re, im + o.im); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re - o.re, im - o.im); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussRat operator/(const GaussRat& o) const {
        if (o.is_zero()) throw computation_error("GaussRat: division by zero");
        mpq_class n2 = o.re * o.re + o.im * o.im;
        return GaussRat((re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2);
    }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }
    GaussRat& operator/=(const GaussRat& o) { *this = *this / o; return *this; }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    // squared modulus, exact
    mpq_class norm2() const { return re * re + im * im; }

    GaussRat conj() const { return GaussRat(re, -im); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    // total order for canonical sorting (not the complex modulus order)
    static int cmp(const GaussRat& a, const GaussRat& b) {
        int c = ::cmp(a.re, b.re);
        if (c != 0) return c;
        return ::cmp(a.im, b.im);
    }
};

// "p/q" or "p" for rationals; "a+b*i" style for full Gaussian rationals.
std::string to_string(const mpq_class& q);
std::string to_string(const GaussRat& x);
mpq_class parse_rational(const std::string& s);
GaussRat parse_gauss_rat(const std::string& s);

using Cplx = std::complex<double>;

/// Scalar traits shared by the exact, rational-function and float coefficient rings.
template <class F>
struct scalar_traits;

template <>
struct scalar_traits<GaussRat> {
    static GaussRat zero() { return GaussRat::zero(); }
    static GaussRat one() { return GaussRat::one(); }
    static GaussRat from_long(long n) { return GaussRat::from_long(n); }
    static bool is_zero(const GaussRat& x) { return x.is_zero(); }
    static constexpr bool exact = true;
};

template <>
struct scalar_traits<Cplx> {
    static Cplx zero() { return {0.0, 0.0}; }
    static Cplx one() { return {1.0, 0.0}; }
    static Cplx from_long(long n) { return {double(n), 0.0}; }
    static bool is_zero(const Cplx& x) { return x.real() == 0.0 && x.imag() == 0.0; }
    static constexpr bool exact = false;
};

inline Cplx to_float(const GaussRat& x) { return x.to_complex(); }

}  // namespace coindex
