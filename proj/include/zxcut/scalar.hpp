#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zxcut {

// Multiple of pi/4, always reduced mod 8.
class Phase {
public:
    constexpr Phase() = default;
    constexpr explicit Phase(int n) : _n(static_cast<uint8_t>(((n % 8) + 8) % 8)) {}

    constexpr int num() const { return _n; }
    constexpr bool is_zero() const { return _n == 0; }
    constexpr bool is_clifford() const { return (_n & 1) == 0; }
    constexpr bool is_t_like() const { return (_n & 1) == 1; }
    constexpr bool is_pauli() const { return _n == 0 || _n == 4; }
    constexpr bool is_proper_clifford() const { return _n == 2 || _n == 6; }

    constexpr Phase operator+(Phase o) const { return Phase(_n + o._n); }
    constexpr Phase operator-(Phase o) const { return Phase(_n - o._n); }
    constexpr Phase operator-() const { return Phase(-_n); }
    constexpr Phase& operator+=(Phase o) { return *this = *this + o; }
    constexpr Phase& operator-=(Phase o) { return *this = *this - o; }
    constexpr bool operator==(const Phase&) const = default;

    double radians() const;
    // pyzx-like rendering: "0", "\\pi", "\\frac{\\pi}{4}", "\\frac{3\\pi}{4}", ...
    std::string to_latex() const;
    std::string to_string() const;

private:
    uint8_t _n = 0;
};

class ScalarOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// 2^(-k/2) * (c0 + c1 w + c2 w^2 + c3 w^3) with w = e^{i pi/4}; the coefficients are never all
// divisible by sqrt 2, which makes the form unique.
class ExactScalar {
public:
    using Coeffs = std::array<int64_t, 4>;

    ExactScalar() = default;
    ExactScalar(int64_t v) : ExactScalar(0, {v, 0, 0, 0}) {}  // NOLINT(google-explicit-constructor)
    ExactScalar(int k, Coeffs c);

    static ExactScalar zero() { return {}; }
    static ExactScalar one() { return {1}; }
    static ExactScalar omega_pow(int j);
    static ExactScalar phase(Phase p) { return omega_pow(p.num()); }
    static ExactScalar sqrt2_pow(int e);  // (sqrt 2)^e, e may be negative
    // 1 + e^{i p pi/4}
    static ExactScalar one_plus_phase(Phase p) { return one() + phase(p); }

    int k() const { return _k; }
    const Coeffs& coeffs() const { return _c; }
    bool is_zero() const { return _c[0] == 0 && _c[1] == 0 && _c[2] == 0 && _c[3] == 0; }

    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-(const ExactScalar& o) const;
    ExactScalar operator-() const;
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    bool operator==(const ExactScalar&) const = default;

    ExactScalar mul_sqrt2_pow(int e) const;
    ExactScalar mul_omega_pow(int j) const;
    ExactScalar conj() const;

    std::complex<double> to_complex() const;
    std::string to_string() const;

    // Stable ordering, used only for deterministic output.
    bool operator<(const ExactScalar& o) const {
        if (_k != o._k) return _k < o._k;
        return _c < o._c;
    }

private:
    void canonicalise();

    int _k = 0;
    Coeffs _c{0, 0, 0, 0};
};

// Multiply a ring element by sqrt(2) = w - w^3 in coefficient space.
ExactScalar::Coeffs times_sqrt2(const ExactScalar::Coeffs& c);
bool divisible_by_sqrt2(const ExactScalar::Coeffs& c);
ExactScalar::Coeffs div_sqrt2(const ExactScalar::Coeffs& c);

}  // namespace zxcut
