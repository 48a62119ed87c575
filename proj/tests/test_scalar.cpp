#include <doctest.h>

#include "zxstar/circuits.hpp"
#include "zxstar/scalar.hpp"

#include <cmath>

using namespace zxstar;

namespace {

ExactScalar random_scalar(SplitMix64& rng) {
    auto small = [&]() { return static_cast<std::int64_t>(rng.below(17)) - 8; };
    return ExactScalar(small(), small(), small(), small(),
                       static_cast<std::uint32_t>(rng.below(4)));
}

} // namespace

TEST_CASE("phase arithmetic wraps modulo 8") {
    CHECK(Phase(9).eighths() == 1);
    CHECK(Phase(-1).eighths() == 7);
    CHECK((Phase(3) + Phase(7)).eighths() == 2);
    CHECK((-Phase(2)).eighths() == 6);
    CHECK(Phase(2).is_clifford());
    CHECK(!Phase(1).is_clifford());
}

TEST_CASE("canonical form reduces even numerators") {
    ExactScalar s(2, 0, 0, 0, 1);
    CHECK(s == ExactScalar::one());
    ExactScalar z(0, 0, 0, 0, 5);
    CHECK(z.is_zero());
    CHECK(z.k() == 0);
    ExactScalar odd(2, 1, 0, 0, 3);
    CHECK(odd.k() == 3);
}

TEST_CASE("omega squared is i, omega to the fourth is minus one") {
    ExactScalar w = ExactScalar::phase_factor(Phase(1));
    CHECK(w * w == ExactScalar::i());
    CHECK(w * w * w * w == -ExactScalar::one());
    // ((1+i)/sqrt2)^2 = i
    ExactScalar e4 = ExactScalar(0, 0, 1, 1, 1);
    CHECK(e4 * e4 == ExactScalar::i());
}

TEST_CASE("sqrt2 powers") {
    CHECK(ExactScalar::sqrt2_pow(2) == ExactScalar::integer(2));
    CHECK(ExactScalar::sqrt2_pow(-2) == ExactScalar(1, 0, 0, 0, 1));
    CHECK(ExactScalar::sqrt2_pow(1) * ExactScalar::sqrt2_pow(-1) ==
          ExactScalar::one());
    // (sqrt2/2)^2 = 1/2
    ExactScalar h = ExactScalar::inv_sqrt2();
    CHECK(h * h == ExactScalar(1, 0, 0, 0, 1));
}

TEST_CASE("worked products from the decomposition coefficients") {
    // (15 sqrt2 / 8) * 2 = 15 sqrt2 / 4
    ExactScalar x(0, 0, 15, 0, 3);
    CHECK(x * ExactScalar::integer(2) == ExactScalar(0, 0, 15, 0, 2));
    // exactness is strict: perturbing a coefficient changes the value
    CHECK(!(ExactScalar::integer(-192) == ExactScalar::integer(-191)));
}

TEST_CASE("ring laws hold on random canonical operands") {
    SplitMix64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        ExactScalar a = random_scalar(rng), b = random_scalar(rng),
                    c = random_scalar(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + ExactScalar::zero() == a);
        CHECK(a * ExactScalar::one() == a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("complex embedding is consistent") {
    SplitMix64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        ExactScalar a = random_scalar(rng), b = random_scalar(rng);
        auto prod = (a * b).to_complex();
        auto ref = a.to_complex() * b.to_complex();
        CHECK(std::abs(prod - ref) < 1e-9 * (1 + std::abs(ref)));
    }
    CHECK(ExactScalar::i().conj() == -ExactScalar::i());
}
