#include "zxcut/scalar.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace zxcut {

namespace {

int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw ScalarOverflow("exact scalar coefficient overflow");
    return static_cast<int64_t>(v);
}

bool is_even(int64_t v) { return (v & 1) == 0; }

}  // namespace

double Phase::radians() const { return std::numbers::pi * _n / 4.0; }

std::string Phase::to_latex() const {
    switch (_n) {
        case 0: return "0";
        case 1: return "\\frac{\\pi}{4}";
        case 2: return "\\frac{\\pi}{2}";
        case 3: return "\\frac{3\\pi}{4}";
        case 4: return "\\pi";
        case 5: return "\\frac{5\\pi}{4}";
        case 6: return "\\frac{3\\pi}{2}";
        default: return "\\frac{7\\pi}{4}";
    }
}

std::string Phase::to_string() const {
    switch (_n) {
        case 0: return "0";
        case 4: return "pi";
        case 2: return "pi/2";
        case 6: return "3pi/2";
        default: return std::to_string(_n) + "pi/4";
    }
}

ExactScalar::Coeffs times_sqrt2(const ExactScalar::Coeffs& y) {
    return {narrow(__int128(y[1]) - y[3]), narrow(__int128(y[0]) + y[2]),
            narrow(__int128(y[1]) + y[3]), narrow(__int128(y[2]) - y[0])};
}

bool divisible_by_sqrt2(const ExactScalar::Coeffs& c) {
    return is_even(c[0] - c[2]) && is_even(c[1] - c[3]);
}

ExactScalar::Coeffs div_sqrt2(const ExactScalar::Coeffs& c) {
    return {narrow((__int128(c[1]) - c[3]) / 2), narrow((__int128(c[0]) + c[2]) / 2),
            narrow((__int128(c[1]) + c[3]) / 2), narrow((__int128(c[2]) - c[0]) / 2)};
}

ExactScalar::ExactScalar(int k, Coeffs c) : _k(k), _c(c) { canonicalise(); }

void ExactScalar::canonicalise() {
    if (is_zero()) {
        _k = 0;
        return;
    }
    while (divisible_by_sqrt2(_c)) {
        _c = div_sqrt2(_c);
        --_k;
    }
}

ExactScalar ExactScalar::omega_pow(int j) {
    j = ((j % 8) + 8) % 8;
    Coeffs c{0, 0, 0, 0};
    c[j % 4] = j < 4 ? 1 : -1;
    return {0, c};
}

ExactScalar ExactScalar::sqrt2_pow(int e) { return one().mul_sqrt2_pow(e); }

ExactScalar ExactScalar::mul_sqrt2_pow(int e) const {
    if (is_zero()) return {};
    ExactScalar r = *this;
    r._k -= e;
    return r;
}

ExactScalar ExactScalar::mul_omega_pow(int j) const {
    j = ((j % 8) + 8) % 8;
    ExactScalar r = *this;
    for (int s = 0; s < j; ++s) r._c = {-r._c[3], r._c[0], r._c[1], r._c[2]};
    return r;
}

ExactScalar ExactScalar::conj() const {
    // w^j -> w^{-j} = -w^{4-j}
    return {_k, {_c[0], -_c[3], -_c[2], -_c[1]}};
}

ExactScalar ExactScalar::operator-() const { return {_k, {-_c[0], -_c[1], -_c[2], -_c[3]}}; }

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Coeffs a = _c, b = o._c;
    int k = std::max(_k, o._k);
    for (int i = _k; i < k; ++i) a = times_sqrt2(a);
    for (int i = o._k; i < k; ++i) b = times_sqrt2(b);
    Coeffs s;
    for (int i = 0; i < 4; ++i) s[i] = narrow(__int128(a[i]) + b[i]);
    return {k, s};
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    if (is_zero() || o.is_zero()) return {};
    __int128 r[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            __int128 p = __int128(_c[i]) * o._c[j];
            int d = i + j;
            if (d >= 4) r[d - 4] -= p;
            else r[d] += p;
        }
    }
    return {_k + o._k, {narrow(r[0]), narrow(r[1]), narrow(r[2]), narrow(r[3])}};
}

std::complex<double> ExactScalar::to_complex() const {
    const double h = std::numbers::sqrt2 / 2.0;
    std::complex<double> v(double(_c[0]) + h * double(_c[1] - _c[3]), h * double(_c[1] + _c[3]) + double(_c[2]));
    return v * std::pow(2.0, -_k / 2.0);
}

std::string ExactScalar::to_string() const {
    std::ostringstream os;
    os << "2^(" << -_k << "/2)*(" << _c[0] << "," << _c[1] << "," << _c[2] << "," << _c[3] << ")";
    return os.str();
}

}  // namespace zxcut
