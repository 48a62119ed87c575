#include "zxstar/scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zxstar {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("ExactScalar numerator overflow (+)");
    return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("ExactScalar numerator overflow (*)");
    return r;
}

std::int64_t checked_shl(std::int64_t x, std::uint32_t s) {
    if (x == 0)
        return 0;
    if (s >= 63)
        throw std::overflow_error("ExactScalar numerator overflow (<<)");
    std::int64_t r = x << s;
    if (r >> s != x)
        throw std::overflow_error("ExactScalar numerator overflow (<<)");
    return r;
}

} // namespace

ExactScalar::ExactScalar(std::int64_t a, std::int64_t b, std::int64_t c,
                         std::int64_t d, std::uint32_t k)
    : a_(a), b_(b), c_(c), d_(d), k_(k) {
    normalize();
}

void ExactScalar::normalize() {
    if (is_zero()) {
        k_ = 0;
        return;
    }
    while (k_ > 0 && a_ % 2 == 0 && b_ % 2 == 0 && c_ % 2 == 0 && d_ % 2 == 0) {
        a_ /= 2;
        b_ /= 2;
        c_ /= 2;
        d_ /= 2;
        --k_;
    }
}

ExactScalar ExactScalar::phase_factor(Phase p) {
    switch (p.eighths()) {
    case 0: return one();
    case 1: return {0, 0, 1, 1, 1};  // (1+i)/sqrt2
    case 2: return i();
    case 3: return {0, 0, -1, 1, 1}; // (-1+i)/sqrt2
    case 4: return {-1, 0, 0, 0};
    case 5: return {0, 0, -1, -1, 1};
    case 6: return {0, -1, 0, 0};
    default: return {0, 0, 1, -1, 1};
    }
}

ExactScalar ExactScalar::sqrt2_pow(int m) {
    if (m >= 0) {
        // sqrt2^m = 2^{m/2} or 2^{(m-1)/2} * sqrt2
        std::int64_t pow2 = std::int64_t{1} << (m / 2);
        return (m % 2 == 0) ? ExactScalar{pow2, 0, 0, 0}
                            : ExactScalar{0, 0, pow2, 0};
    }
    int n = -m;
    // sqrt2^-n = sqrt2^n / 2^n
    std::int64_t pow2 = std::int64_t{1} << (n / 2);
    return (n % 2 == 0) ? ExactScalar{pow2, 0, 0, 0, static_cast<std::uint32_t>(n)}
                        : ExactScalar{0, 0, pow2, 0, static_cast<std::uint32_t>(n)};
}

ExactScalar ExactScalar::one_plus_phase(Phase p) {
    return one() + phase_factor(p);
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
    std::uint32_t k = std::max(k_, o.k_);
    std::uint32_t s1 = k - k_, s2 = k - o.k_;
    return {checked_add(checked_shl(a_, s1), checked_shl(o.a_, s2)),
            checked_add(checked_shl(b_, s1), checked_shl(o.b_, s2)),
            checked_add(checked_shl(c_, s1), checked_shl(o.c_, s2)),
            checked_add(checked_shl(d_, s1), checked_shl(o.d_, s2)), k};
}

ExactScalar ExactScalar::operator-() const {
    return {-a_, -b_, -c_, -d_, k_};
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const {
    return *this + (-o);
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
    // (g1 + h1*sqrt2)(g2 + h2*sqrt2) with g,h Gaussian integers:
    // g1*g2 + 2*h1*h2 + (g1*h2 + h1*g2)*sqrt2
    const std::int64_t a1 = a_, b1 = b_, c1 = c_, d1 = d_;
    const std::int64_t a2 = o.a_, b2 = o.b_, c2 = o.c_, d2 = o.d_;
    std::int64_t ra = checked_add(
        checked_add(checked_mul(a1, a2), -checked_mul(b1, b2)),
        checked_mul(2, checked_add(checked_mul(c1, c2), -checked_mul(d1, d2))));
    std::int64_t rb = checked_add(
        checked_add(checked_mul(a1, b2), checked_mul(b1, a2)),
        checked_mul(2, checked_add(checked_mul(c1, d2), checked_mul(d1, c2))));
    std::int64_t rc = checked_add(checked_add(checked_mul(a1, c2), -checked_mul(b1, d2)),
                                  checked_add(checked_mul(c1, a2), -checked_mul(d1, b2)));
    std::int64_t rd = checked_add(checked_add(checked_mul(a1, d2), checked_mul(b1, c2)),
                                  checked_add(checked_mul(c1, b2), checked_mul(d1, a2)));
    std::uint32_t k = k_ + o.k_;
    return {ra, rb, rc, rd, k};
}

ExactScalar ExactScalar::conj() const {
    return {a_, -b_, c_, -d_, k_};
}

std::complex<double> ExactScalar::to_complex() const {
    const double s2 = std::sqrt(2.0);
    const double scale = std::ldexp(1.0, -static_cast<int>(k_));
    return {(static_cast<double>(a_) + static_cast<double>(c_) * s2) * scale,
            (static_cast<double>(b_) + static_cast<double>(d_) * s2) * scale};
}

double ExactScalar::abs2() const {
    return std::norm(to_complex());
}

std::string ExactScalar::str() const {
    std::ostringstream os;
    os << "(" << a_ << (b_ >= 0 ? "+" : "") << b_ << "i";
    if (c_ != 0 || d_ != 0)
        os << (c_ >= 0 ? "+" : "") << c_ << "s2" << (d_ >= 0 ? "+" : "") << d_ << "is2";
    os << ")";
    if (k_ > 0)
        os << "/2^" << k_;
    return os.str();
}

} // namespace zxstar
