#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "htcsim/baselines.hpp"
#include "htcsim/encodings.hpp"
#include "htcsim/mac.hpp"
#include "test_util.hpp"

using namespace htcsim;

namespace {

std::vector<FixedPoint> vec(int bits, std::initializer_list<uint32_t> codes, Polarity pol) {
    std::vector<FixedPoint> v;
    for (uint32_t c : codes) v.push_back({bits, c, pol});
    return v;
}

UnaryStream prefix(size_t len, size_t ones) { return UnaryStream::prefix(len, ones); }

}  // namespace

TEST_CASE("cbsc_multiply: counting window worked example 5/8 x 6/8") {
    const FixedPoint p = cbsc_multiply(make_unipolar(3, 5), make_unipolar(3, 6));
    CHECK(p.code == 4u);  // ones of RB 11101110 in the first 5 cycles
    CHECK(p.value() == doctest::Approx(0.5));
    CHECK(cbsc_multiply(make_unipolar(3, 0), make_unipolar(3, 6)).code == 0u);
}

TEST_CASE("cbsc_multiply: maximal window drops only the last RB cycle") {
    for (int N : {3, 4, 5}) {
        const uint32_t wmax = (1u << N) - 1;
        for (uint32_t x = 0; x < (1u << N); ++x) {
            const uint32_t got = cbsc_multiply(make_unipolar(N, wmax), make_unipolar(N, x)).code;
            const int last = rb_bit(x, N, 1u << N);
            REQUIRE(last == 0);  // cycle 2^N has ctz = N: never carries a digit
            REQUIRE(got == x - static_cast<uint32_t>(last));
        }
    }
}

TEST_CASE("cbsc_multiply equals unipolar htc_multiply for all pairs, N <= 6") {
    for (int N = 1; N <= 6; ++N)
        for (uint32_t a = 0; a < (1u << N); ++a)
            for (uint32_t w = 0; w < (1u << N); ++w) {
                const Bitstream htc =
                    htc_multiply(make_unipolar(N, a), make_unipolar(N, w), Polarity::Unipolar);
                const FixedPoint cb = cbsc_multiply(make_unipolar(N, w), make_unipolar(N, a));
                REQUIRE(htc.popcount() == cb.code);
            }
}

TEST_CASE("cbsc_mac: exact binary accumulation") {
    SUBCASE("zero data vector") {
        CHECK(cbsc_mac(vec(8, {13, 130, 201, 77}, Polarity::Unipolar),
                       vec(8, {0, 0, 0, 0}, Polarity::Unipolar), Polarity::Unipolar) ==
              doctest::Approx(0.0));
    }
    SUBCASE("single element degenerates to cbsc_multiply") {
        for (uint32_t w : {0u, 3u, 5u, 7u})
            for (uint32_t x : {1u, 4u, 6u}) {
                const double mac = cbsc_mac(vec(3, {w}, Polarity::Unipolar),
                                            vec(3, {x}, Polarity::Unipolar), Polarity::Unipolar);
                REQUIRE(mac ==
                        doctest::Approx(cbsc_multiply(make_unipolar(3, w), make_unipolar(3, x)).value()));
            }
    }
    SUBCASE("numerator convention: value = num / 2^N") {
        const auto b = vec(8, {13, 130, 201, 77}, Polarity::Unipolar);
        const auto c = vec(8, {250, 8, 128, 64}, Polarity::Unipolar);
        const long long num = cbsc_mac_num(b, c, Polarity::Unipolar);
        CHECK(cbsc_mac(b, c, Polarity::Unipolar) == doctest::Approx(num / 256.0));
    }
    SUBCASE("bipolar sign-magnitude: -1/2 x 3/4 counts to exactly -3/8") {
        const double got = cbsc_mac(vec(3, {2}, Polarity::Bipolar),  // value -1/2, sw = -4
                                    vec(3, {7}, Polarity::Bipolar),  // value 3/4, sx = 6
                                    Polarity::Bipolar);
        CHECK(got == doctest::Approx(-3.0 / 8));  // ones of RB(6) in a 4-cycle window, negated
    }
    SUBCASE("bipolar full-scale magnitude acts as an all-ones stream") {
        // b code 0 -> sw = -8, |sw| = 2^N: the window passes the whole RB stream
        const double got = cbsc_mac(vec(3, {0}, Polarity::Bipolar),
                                    vec(3, {7}, Polarity::Bipolar), Polarity::Bipolar);
        CHECK(got == doctest::Approx(-6.0 / 8));  // exactly -1 * 3/4
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(cbsc_mac(vec(3, {1, 2}, Polarity::Unipolar),
                                 vec(3, {1}, Polarity::Unipolar), Polarity::Unipolar),
                        ConfigError);
    }
}

TEST_CASE("unary_multiply: clock-division rule") {
    SUBCASE("worked example 1100 x 10") {
        const UnaryStream p = unary_multiply(prefix(4, 2), prefix(2, 1));
        REQUIRE(p.len == 8u);
        CHECK(p.popcount() == 2u);
        CHECK(p.value() == doctest::Approx(0.25));
        // bit t = a[t mod 4] AND b[t div 4]
        const bool expect[8] = {1, 1, 0, 0, 0, 0, 0, 0};
        for (size_t t = 0; t < 8; ++t) REQUIRE(p.bit(t) == expect[t]);
    }
    SUBCASE("absorbing and identity patterns") {
        CHECK(unary_multiply(prefix(5, 3), prefix(4, 0)).popcount() == 0u);
        const UnaryStream ones = unary_multiply(prefix(3, 3), prefix(4, 4));
        CHECK(ones.popcount() == 12u);
        CHECK(ones.value() == doctest::Approx(1.0));
    }
    SUBCASE("exact for all prefix pairs at reduced scale") {
        for (size_t na = 1; na <= 12; ++na)
            for (size_t oa = 0; oa <= na; ++oa)
                for (size_t nb = 1; nb <= 12; ++nb)
                    for (size_t ob = 0; ob <= nb; ++ob) {
                        const UnaryStream p = unary_multiply(prefix(na, oa), prefix(nb, ob));
                        REQUIRE(p.len == na * nb);
                        REQUIRE(p.popcount() == oa * ob);
                    }
        // spot checks at the full 64-length scale
        CHECK(unary_multiply(prefix(64, 37), prefix(64, 22)).popcount() == 37u * 22u);
        CHECK(unary_multiply(prefix(64, 64), prefix(64, 63)).popcount() == 64u * 63u);
    }
}

TEST_CASE("unary_add_or: delayed-OR summation") {
    SUBCASE("disjoint runs add exactly") {
        const std::vector<UnaryStream> in = {prefix(16, 3), prefix(16, 5)};
        const UnaryStream sum = unary_add_or(in, {0, 8});
        CHECK(sum.len == 16u);
        CHECK(sum.popcount() == 8u);
    }
    SUBCASE("overlapping runs collapse toward one stream") {
        // Equal delays are rejected (see the duplicate-delay subcase), so the
        // maximal-overlap loss is probed with the closest legal schedule: two
        // identical 6-runs offset by one cycle OR into [0,7), not 12 ones.
        const std::vector<UnaryStream> in = {prefix(16, 6), prefix(16, 6)};
        CHECK(unary_add_or(in, {0, 1}).popcount() == 7u);
    }
    SUBCASE("delays are cyclic") {
        const UnaryStream shifted = unary_add_or({prefix(8, 3)}, {6});
        // ones move to positions 6,7,0 (wrap)
        CHECK(shifted.popcount() == 3u);
        CHECK(shifted.bit(6));
        CHECK(shifted.bit(7));
        CHECK(shifted.bit(0));
        CHECK_FALSE(shifted.bit(1));
    }
    SUBCASE("duplicate delays are a configuration error") {
        const std::vector<UnaryStream> in = {prefix(8, 1), prefix(8, 1)};
        CHECK_THROWS_AS(unary_add_or(in, {3, 3}), ConfigError);
        CHECK_THROWS_AS(unary_add_or(in, {3}), ConfigError);  // count mismatch
    }
    SUBCASE("constructed non-overlapping schedule is exact") {
        // four prefix streams of length 256 with runs 10/20/30/40; delays spread
        // them into disjoint windows, so the OR-sum popcount is exactly 100
        std::vector<UnaryStream> in;
        for (size_t ones : {10u, 20u, 30u, 40u}) in.push_back(prefix(256, ones));
        CHECK(unary_accuracy_bound(256, 4) >= 40);  // schedule respects the bound
        const UnaryStream sum = unary_add_or(in, {0, 64, 128, 192});
        CHECK(sum.popcount() == 100u);
    }
}

TEST_CASE("unary_accuracy_bound: closed form") {
    CHECK(unary_accuracy_bound(7, 1) == 3);     // N=1: floor(n/2)
    CHECK(unary_accuracy_bound(256, 1) == 128);
    CHECK(unary_accuracy_bound(256, 4) == 85);  // ceil((sqrt(17)-1)/2) = 2 -> floor(256/3)
    CHECK(unary_accuracy_bound(1, 4) == 0);
    CHECK(unary_accuracy_bound(1, 1) == 0);
}

TEST_CASE("unary_mac: end-to-end PWM MAC") {
    SUBCASE("all-zero inputs: zero value, full latency accounting") {
        const auto r = unary_mac(vec(8, {0, 0, 0, 0}, Polarity::Unipolar),
                                 vec(8, {0, 0, 0, 0}, Polarity::Unipolar), 256);
        CHECK(r.value == doctest::Approx(0.0));
        CHECK(r.ones == 0);
        CHECK(r.stream_len == 65536u);
        CHECK(r.latency_cycles == 4ll * 256 * 256);  // n^2 cycles per product
    }
    SUBCASE("single product is exact") {
        const auto r = unary_mac(vec(4, {10}, Polarity::Unipolar),
                                 vec(4, {3}, Polarity::Unipolar), 16);
        CHECK(r.ones == 30);  // (10/16)*(3/16) = 30/256 exactly
        CHECK(r.value == doctest::Approx(30.0 / 256));
        CHECK(r.latency_cycles == 256);
    }
    SUBCASE("custom disjoint delays recover the exact dot product") {
        // within-block intervals [0,2) [2,5) [5,9) [9,14) never collide
        const std::vector<long long> delays = {0, 2, 5, 9};
        const auto r = unary_mac(vec(4, {2, 3, 4, 5}, Polarity::Unipolar),
                                 vec(4, {15, 14, 13, 12}, Polarity::Unipolar), 16, &delays);
        CHECK(r.ones == 2 * 15 + 3 * 14 + 4 * 13 + 5 * 12);  // 184: no OR loss
    }
    SUBCASE("default schedule spreads delays by n^2/M") {
        // one stream with a single one per selected block: delays i*floor(n^2/M)
        // move the four streams into disjoint quarters -> exact
        const auto exact = unary_mac(vec(4, {1, 1, 1, 1}, Polarity::Unipolar),
                                     vec(4, {1, 1, 1, 1}, Polarity::Unipolar), 16);
        CHECK(exact.ones == 4);
        // saturating overlap: identical wide streams with forced zero delays
        const std::vector<long long> same{0, 1, 2, 3};
        const auto lossy = unary_mac(vec(4, {15, 15, 15, 15}, Polarity::Unipolar),
                                     vec(4, {15, 15, 15, 15}, Polarity::Unipolar), 16, &same);
        CHECK(lossy.ones < 4 * 15 * 15);  // OR saturation loses mass
    }
}
