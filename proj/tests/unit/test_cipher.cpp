#include "permlift/cipher.hpp"
#include "permlift/errors.hpp"

#include <doctest.h>

#include <cstdio>

using namespace permlift;

namespace {

Permutation P(std::vector<Elem> v) { return Permutation(std::move(v)); }

}

TEST_CASE("cipher reprogramming touches one key")
{
    const Cipher e = Cipher::identity(2, 4);
    const Cipher r = cipher_reprogram(e, {1, 0, 2});
    CHECK(r.perm(0) == Permutation::identity(4));
    CHECK(r.perm(1) == P({2, 1, 0, 3}));
    for (Key k = 0; k < 2; ++k)
        for (Elem x = 0; x < 4; ++x)
            CHECK(cipher_reprogram(e, {k, x, e.enc(k, x)}) == e);
    CHECK_THROWS_AS(cipher_reprogram(e, {2, 0, 0}), DomainError);
    CHECK_THROWS_AS(cipher_reprogram(e, {0, 4, 0}), DomainError);
}

TEST_CASE("triples on distinct keys commute")
{
    Rng rng = stream(11);
    for (int t = 0; t < 200; ++t) {
        const Cipher e = random_cipher(2, 4, rng);
        const Triple a{0, Elem(uniform_below(rng, 4)), Elem(uniform_below(rng, 4))};
        const Triple b{1, Elem(uniform_below(rng, 4)), Elem(uniform_below(rng, 4))};
        CHECK(cipher_reprogram_seq(e, {a, b}) == cipher_reprogram_seq(e, {b, a}));
    }
}

TEST_CASE("cipher goodness")
{
    const Cipher e = Cipher::identity(2, 4);
    CHECK(cipher_is_good(e, {{0, 0, 1}, {1, 0, 1}}));
    CHECK_FALSE(cipher_is_good(e, {{0, 0, 1}, {0, 0, 2}}));
    for (Key k = 0; k < 2; ++k)
        CHECK_FALSE(cipher_is_good(e, {{k, 3, e.enc(k, 3)}}));
}

TEST_CASE("cipher hit and miss points")
{
    const Cipher e = Cipher::identity(2, 4);
    const Cipher star(4, {Permutation::identity(4), P({1, 0, 2, 3})});
    const auto hm = cipher_hit_miss(e, star, {1}, {0});
    REQUIRE(hm.size() == 1);
    CHECK(hm[0] == CipherHitMiss{1, 0, 1, 1, 0});
    CHECK_THROWS_AS(cipher_hit_miss(e, e, {0}, {0}), PreconditionError);
    CHECK_THROWS_AS(cipher_in_G(e, star, {0, 0}, {2, 2}), PreconditionError);
    // same element under different keys is a legal target list
    CHECK_NOTHROW(cipher_in_G(e, star, {0, 1}, {2, 2}));
}

TEST_CASE("single-key ciphers agree with permutations")
{
    const auto perms = all_permutations(4);
    for (const auto& pi : perms) {
        const Cipher e = Cipher::single(pi);
        for (Elem x = 0; x < 4; ++x)
            for (Elem y = 0; y < 4; ++y) {
                REQUIRE(cipher_reprogram(e, {0, x, y}).perm(0) == reprogram(pi, x, y));
                REQUIRE(cipher_is_good(e, {{0, x, y}}) == is_good(pi, {{x, y}}));
            }
        for (const auto& star : perms)
            for (Elem x = 0; x < 4; ++x) {
                const bool g = in_G(pi, star, {x});
                REQUIRE(cipher_in_G(e, Cipher::single(star), {0}, {x}) == g);
                if (g) {
                    const auto a = cipher_hit_miss(e, Cipher::single(star), {0}, {x})[0];
                    const auto b = hit_miss(pi, star, {x})[0];
                    REQUIRE(a == CipherHitMiss{0, b.x_hit, b.x_miss, b.y_hit, b.y_miss});
                }
            }
    }
}

TEST_CASE("cipher bad probability")
{
    CHECK(cipher_bad_probability_bound(1, 16) == Rational(1, 16));
    CHECK(cipher_bad_probability_bound(3, 9) == 1);
    // 1-key fraction equals the permutation fraction
    std::uint64_t bad_c = 0, bad_p = 0;
    const Permutation pi = P({2, 3, 0, 1});
    for (const auto& star : all_permutations(4)) {
        bad_p += !in_G(pi, star, {1});
        bad_c += !cipher_in_G(Cipher::single(pi), Cipher::single(star), {0}, {1});
    }
    CHECK(bad_p == bad_c);
    CHECK(Rational(bad_p, 24) <= cipher_bad_probability_bound(1, 4));
}

TEST_CASE("cipher enumeration and JSON")
{
    CHECK(all_ciphers(2, 3).size() == 36);
    CHECK(all_ciphers(2, 3).front() == Cipher::identity(2, 3));
    CHECK_THROWS_AS(Cipher(4, {Permutation::identity(3)}), DomainError);
    Rng rng = stream(3);
    const Cipher e = random_cipher(3, 5, rng);
    CHECK(cipher_from_json(to_json(e)) == e);
    const std::string path = "permlift_test_cipher.json";
    save_cipher(e, path);
    CHECK(load_cipher(path) == e);
    std::remove(path.c_str());
    CHECK_THROWS_AS(cipher_from_json(nlohmann::json{{"key_count", 2}, {"n", 2}, {"perms", {{0, 1}}}}), ParseError);
}
