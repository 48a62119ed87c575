#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace zxstar {

/// Spider phase, an integer multiple of pi/4 stored modulo 8.
class Phase {
public:
    constexpr Phase() = default;
    constexpr explicit Phase(int eighths) : eighths_(((eighths % 8) + 8) % 8) {}

    static constexpr Phase zero() { return Phase(0); }
    static constexpr Phase pi() { return Phase(4); }
    static constexpr Phase plus_pi_2() { return Phase(2); }
    static constexpr Phase minus_pi_2() { return Phase(6); }

    constexpr int eighths() const { return eighths_; }
    constexpr bool is_zero() const { return eighths_ == 0; }
    constexpr bool is_pi() const { return eighths_ == 4; }
    constexpr bool is_clifford() const { return eighths_ % 2 == 0; }

    constexpr Phase operator+(Phase o) const { return Phase(eighths_ + o.eighths_); }
    constexpr Phase operator-() const { return Phase(-eighths_); }
    constexpr bool operator==(const Phase&) const = default;
    constexpr auto operator<=>(const Phase&) const = default;

private:
    std::uint8_t eighths_ = 0;
};

/// Element of the ring {(a + b*i + (c + d*i)*sqrt2) / 2^k}.
///
/// Canonical form: k == 0 or not all of a,b,c,d are even. Arithmetic is
/// exact; numerator overflow beyond 64 bits throws std::overflow_error
/// instead of wrapping.
class ExactScalar {
public:
    constexpr ExactScalar() = default; // zero

    ExactScalar(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                std::uint32_t k = 0);

    static ExactScalar zero() { return {}; }
    static ExactScalar one() { return {1, 0, 0, 0}; }
    static ExactScalar integer(std::int64_t n) { return {n, 0, 0, 0}; }
    static ExactScalar i() { return {0, 1, 0, 0}; }
    static ExactScalar sqrt2() { return {0, 0, 1, 0}; }
    static ExactScalar inv_sqrt2() { return {0, 0, 1, 0, 1}; }
    /// e^{i pi/4 * eighths}
    static ExactScalar phase_factor(Phase p);
    /// sqrt2^m for m possibly negative
    static ExactScalar sqrt2_pow(int m);
    /// 1 + e^{i pi/4 * eighths}
    static ExactScalar one_plus_phase(Phase p);

    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t c() const { return c_; }
    std::int64_t d() const { return d_; }
    std::uint32_t k() const { return k_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 0 && k_ == 0; }

    ExactScalar operator+(const ExactScalar& o) const;
    ExactScalar operator-(const ExactScalar& o) const;
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar conj() const;

    bool operator==(const ExactScalar&) const = default;

    std::complex<double> to_complex() const;
    double abs2() const;
    std::string str() const;

private:
    void normalize();

    std::int64_t a_ = 0, b_ = 0, c_ = 0, d_ = 0;
    std::uint32_t k_ = 0;
};

} // namespace zxstar
