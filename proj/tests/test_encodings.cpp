#include <doctest.h>

#include <cstdint>

#include "htcsim/encodings.hpp"
#include "test_util.hpp"

using namespace htcsim;
using test::bs;
using test::str;

TEST_CASE("encode_tb: prefix-ones patterns") {
    CHECK(str(encode_tb(make_unipolar(3, 5))) == "11111000");
    CHECK(str(encode_tb(make_unipolar(3, 0))) == "00000000");
    // bipolar 3/4 has offset code 7
    const FixedPoint b34 = make_bipolar(3, 7);
    CHECK(b34.value() == doctest::Approx(0.75));
    CHECK(str(encode_tb(b34)) == "11111110");
    CHECK(encode_tb(b34).format() == StreamFormat::TB);
    CHECK(encode_tb(b34).polarity() == Polarity::Bipolar);
}

TEST_CASE("encode_rb: regulated low-discrepancy patterns") {
    CHECK(str(encode_rb(make_unipolar(3, 6))) == "11101110");
    CHECK(str(encode_rb(make_unipolar(3, 2))) == "01000100");
    CHECK(str(encode_rb(make_unipolar(3, 3))) == "01010100");
    CHECK(encode_rb(make_unipolar(3, 6)).format() == StreamFormat::RB);
}

TEST_CASE("rb_bit: digit i occupies exactly the cycles with ctz(t) = N-1-i") {
    const int N = 3;
    for (int d = 0; d < N; ++d) {
        const uint32_t code = 1u << d;  // isolate one binary digit
        int ones = 0;
        for (uint32_t t = 1; t <= 8; ++t) {
            const int bit = rb_bit(code, N, t);
            const bool expected = __builtin_ctz(t) == N - 1 - d;
            CHECK(bit == (expected ? 1 : 0));
            ones += bit;
        }
        CHECK(ones == static_cast<int>(code));  // multiplicity = binary weight
    }
}

TEST_CASE("decode: popcount rule for both polarities") {
    CHECK(decode(bs("11111000", StreamFormat::TB)) == doctest::Approx(5.0 / 8));
    CHECK(decode(bs("11111110", StreamFormat::TB, Polarity::Bipolar)) == doctest::Approx(0.75));
    CHECK(decode(bs("01010100", StreamFormat::RB)) == doctest::Approx(3.0 / 8));
}

TEST_CASE("signed_to_offset: flip-MSB offset code") {
    CHECK(signed_to_offset(-2, 3).code == 2u);
    CHECK(signed_to_offset(0, 3).code == 4u);
    CHECK(signed_to_offset(-3, 3).code == 1u);
    CHECK(signed_to_offset(3, 3).code == 7u);
    CHECK(signed_to_offset(-2, 3).value() == doctest::Approx(-0.5));
    CHECK_THROWS_AS(signed_to_offset(4, 3), ConfigError);
    CHECK_THROWS_AS(signed_to_offset(-5, 3), ConfigError);
    CHECK_THROWS_AS(signed_to_offset(0, 0), ConfigError);
}

TEST_CASE("FixedPoint validation") {
    CHECK_THROWS_AS(make_unipolar(3, 8), ConfigError);   // code out of range
    CHECK_THROWS_AS(make_unipolar(0, 0), ConfigError);   // width out of range
    CHECK_THROWS_AS(make_unipolar(17, 0), ConfigError);
    CHECK(make_bipolar(8, 128).value() == doctest::Approx(0.0));
}

TEST_CASE("encode/decode round-trips exactly for every code, N <= 10") {
    for (int N = 1; N <= 10; ++N) {
        const double span = static_cast<double>(1u << N);
        for (uint32_t n = 0; n < (1u << N); ++n) {
            const FixedPoint u = make_unipolar(N, n);
            const Bitstream tb = encode_tb(u);
            const Bitstream rb = encode_rb(u);
            REQUIRE(tb.size() == (size_t{1} << N));
            REQUIRE(tb.popcount() == n);
            REQUIRE(rb.popcount() == n);
            REQUIRE(decode(tb) == n / span);   // exact dyadic values
            REQUIRE(decode(rb) == n / span);

            const FixedPoint p = make_bipolar(N, n);
            REQUIRE(decode(encode_tb(p)) == (2.0 * n - span) / span);
            REQUIRE(decode(encode_rb(p)) == (2.0 * n - span) / span);
        }
    }
}

TEST_CASE("TB streams are prefix streams") {
    for (int N : {1, 4, 8}) {
        for (uint32_t n = 0; n < (1u << N); ++n) {
            const Bitstream tb = encode_tb(make_unipolar(N, n));
            for (size_t t = 0; t < tb.size(); ++t) REQUIRE(tb.bit(t) == (t < n));
        }
    }
}

TEST_CASE("gb_to_tb: popcount-preserving prefix compaction") {
    CHECK(str(gb_to_tb(bs("01010100"))) == "11100000");
    CHECK(str(gb_to_tb(bs("10100110"))) == "11110000");
    CHECK(str(gb_to_tb(bs("00000000"))) == "00000000");

    const Bitstream g = bs("10100110", StreamFormat::GB, Polarity::Unipolar);
    const Bitstream once = gb_to_tb(g);
    CHECK(once.format() == StreamFormat::TB);
    CHECK(gb_to_tb(once) == once);             // idempotent
    CHECK(decode(once) == decode(g));          // decode-preserving
    CHECK(once.transitions() <= 2);
}

TEST_CASE("RB discrepancy: |prefix ones - n*w/2^N| <= N for all n, w, N <= 8") {
    for (int N = 1; N <= 8; ++N) {
        const long long L = 1ll << N;
        for (uint32_t n = 0; n < (1u << N); ++n) {
            const Bitstream rb = encode_rb(make_unipolar(N, n));
            long long ones = 0;
            for (long long w = 1; w <= L; ++w) {
                ones += rb.bit(static_cast<size_t>(w - 1));
                // integer form of |ones - n*w/2^N| <= N
                REQUIRE(std::llabs(ones * L - static_cast<long long>(n) * w) <= N * L);
            }
        }
    }
}

TEST_CASE("stream_tables match the per-code encoders bit for bit") {
    for (int N : {1, 3, 8}) {
        const StreamTables& tabs = stream_tables(N);
        REQUIRE(tabs.bits == N);
        REQUIRE(tabs.words_per_code == ((size_t{1} << N) + 63) / 64);
        for (uint32_t n = 0; n < (1u << N); ++n) {
            const Bitstream rb = encode_rb(make_unipolar(N, n));
            const Bitstream tb = encode_tb(make_unipolar(N, n));
            for (size_t w = 0; w < tabs.words_per_code; ++w) {
                REQUIRE(tabs.rb_words(n)[w] == rb.words()[w]);
                REQUIRE(tabs.tb_words(n)[w] == tb.words()[w]);
            }
        }
    }
}
