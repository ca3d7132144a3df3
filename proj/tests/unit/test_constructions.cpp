#include "permlift/constructions.hpp"
#include "permlift/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <set>

using namespace permlift;

namespace {

nlohmann::json load_golden(const char* name)
{
    std::ifstream in(std::string(PERMLIFT_TEST_DATA) + "/" + name);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

}

TEST_CASE("sponge hand vector with the identity permutation")
{
    const SpongeParams p(2, 2, 1, 2);
    CHECK(p.ell_a() == 1);
    CHECK(p.ell_s() == 1);
    CHECK(p.ell() == 1);
    CHECK(sponge_pad(p, 1) == 0b11);
    CHECK(sponge(p, Permutation::identity(16), 1) == 0b11);
    CHECK(sponge(p, Permutation::identity(16), 0) == 0b01);
}

TEST_CASE("sponge matches the reference vectors")
{
    const auto cases = load_golden("sponge_vectors.json");
    REQUIRE(cases.size() >= 8);
    for (const auto& c : cases) {
        const SpongeParams p(c["r"], c["c"], c["m"], c["n"]);
        const Permutation pi(c["perm"].get<std::vector<Elem>>());
        for (const auto& v : c["vectors"]) {
            const std::uint64_t x = v["x"];
            const std::string padded = v["padded"];
            CHECK(sponge_pad(p, x) == std::stoull(padded, nullptr, 2));
            std::uint64_t calls = 0;
            const auto out = sponge(p, [&](Elem s) { ++calls; return pi(s); }, x);
            CHECK(out == v["out"].get<std::uint64_t>());
            CHECK(calls == v["calls"].get<std::uint64_t>());
            CHECK(calls == p.ell());
        }
    }
}

TEST_CASE("sponge calls the permutation exactly ell times")
{
    Rng rng(5);
    for (unsigned r = 1; r <= 6; ++r)
        for (unsigned c = 0; r + c <= 12; c += 3)
            for (unsigned m : {0u, 1u, 5u, 11u})
                for (unsigned n : {1u, 4u, 9u}) {
                    const SpongeParams p(r, c, m, n);
                    const auto pi = random_permutation(p.state_size(), rng);
                    const std::uint64_t x = m ? uniform_below(rng, std::uint64_t(1) << m) : 0;
                    std::uint64_t calls = 0;
                    const auto out = sponge(p, [&](Elem s) { ++calls; return pi(s); }, x);
                    CHECK(calls == (m + r) / r + (n + r - 1) / r - 1);
                    CHECK(out < (std::uint64_t(1) << n));
                }
}

TEST_CASE("sponge with an empty message pads to a single block")
{
    const SpongeParams p(3, 1, 0, 3);
    CHECK(p.ell_a() == 1);
    CHECK(sponge_pad(p, 0) == 0b100);
    CHECK(sponge(p, Permutation::identity(16), 0) == 0b100);
    CHECK_THROWS_AS(sponge_pad(p, 1), DomainError);
}

TEST_CASE("sponge parameter validation")
{
    CHECK_THROWS_AS(SpongeParams(0, 2, 1, 1), ParameterError);
    CHECK_THROWS_AS(SpongeParams(2, 2, 1, 0), ParameterError);
    CHECK_THROWS_AS(SpongeParams(16, 16, 1, 1), ParameterError);
    CHECK_THROWS_AS(SpongeParams(1, 1, 57, 1), ParameterError);
    const SpongeParams p(2, 2, 1, 2);
    CHECK_THROWS_AS(sponge(p, Permutation::identity(8), 0), DomainError);
}

TEST_CASE("Davies-Meyer examples")
{
    CHECK(davies_meyer(Cipher::identity(1, 4), 3, 0) == 0);
    const Cipher swap = Cipher::single(Permutation({1, 0}));
    CHECK(davies_meyer(swap, 0, 0) == 1);
    CHECK(davies_meyer(swap, 1, 0) == 1);
    CHECK_THROWS_AS(davies_meyer(Cipher::identity(1, 3), 0, 0), DomainError);
}

TEST_CASE("PGV selectors resolve their inputs")
{
    Rng rng(9);
    std::vector<Permutation> keys;
    for (int i = 0; i < 8; ++i)
        keys.push_back(random_permutation(8, rng));
    const Cipher e(8, keys);
    const Elem v = 5;
    for (Elem h = 0; h < 8; ++h)
        for (Elem m = 0; m < 8; ++m) {
            CHECK(pgv(e, PgvSelector{}, v, h, m) == davies_meyer(e, h, m));
            CHECK(pgv(e, {PgvSource::constant, PgvSource::constant, PgvSource::constant}, v, h, m) ==
                  (keys[v](v) ^ v));
            CHECK(pgv(e, {PgvSource::h, PgvSource::m, PgvSource::hm}, v, h, m) == (keys[h](m) ^ h ^ m));
            CHECK(pgv(e, {PgvSource::hm, PgvSource::h, PgvSource::m}, v, h, m) == (keys[h ^ m](h) ^ m));
        }
    CHECK_THROWS_AS(pgv(Cipher::identity(2, 8), PgvSelector{}, 0, 0, 0), PreconditionError);
    CHECK_THROWS_AS(pgv(e, PgvSelector{}, 8, 0, 0), DomainError);
}

TEST_CASE("PGV enumeration and grouping")
{
    const auto all = all_pgv_selectors();
    CHECK(all.size() == 64);
    std::set<std::string> names;
    int groups[4] = {};
    for (const auto& s : all) {
        names.insert(to_string(s));
        ++groups[pgv_group(s)];
    }
    CHECK(names.size() == 64);
    CHECK(groups[1] == 12);
    CHECK(groups[2] == 8);
    CHECK(groups[3] == 44);
    CHECK(to_string(PgvSelector{}) == "E_m(h)^h");
    // Davies-Meyer, Matyas-Meyer-Oseas, Miyaguchi-Preneel
    CHECK(pgv_group(PgvSelector{}) == 1);
    CHECK(pgv_group({PgvSource::h, PgvSource::m, PgvSource::m}) == 1);
    CHECK(pgv_group({PgvSource::h, PgvSource::m, PgvSource::hm}) == 1);
    CHECK(pgv_group({PgvSource::constant, PgvSource::h, PgvSource::h}) == 3);
}

TEST_CASE("p_max for standard relations")
{
    for (unsigned n = 1; n <= 6; ++n) {
        CHECK(p_max_bound(relation_preimage(0), n, 1, PmaxKind::k1) == Rational(2, pow2(n)));
        CHECK(p_max_bound(relation_output_collision(2), n, 2, PmaxKind::output_only) == Rational(6, pow2(n)));
        CHECK(p_max_bound(relation_empty(1), n, 1, PmaxKind::k1) == 0);
    }
    CHECK(p_max_bound(relation_output_collision(3), 3, 3, PmaxKind::output_only) == Rational(20, 64));
    CHECK_THROWS_AS(p_max_bound(relation_preimage(0), 3, 2, PmaxKind::k1), PreconditionError);
    CHECK_THROWS_AS(p_max_bound(relation_fixed_point(), 3, 1, PmaxKind::output_only), PreconditionError);
    CHECK_THROWS_AS(p_max_bound(relation_preimage(0), 21, 1, PmaxKind::k1), CapabilityError);
}

TEST_CASE("sponge bounds agree with the generic lifting bound")
{
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned c = 1; c <= 8; c += 3)
            for (unsigned m = 0; m <= 4; m += 2)
                for (unsigned n = 1; n <= 5; n += 2)
                    for (std::uint64_t q = 0; q <= 2; ++q) {
                        const SpongeParams p(r, c, m, n);
                        CHECK(preimage_bound(p, q) == sponge_lift_bound(p, q, 1, Rational(2, pow2(n))));
                        CHECK(collision_bound(p, q) == sponge_lift_bound(p, q, 2, Rational(6, pow2(n))));
                        CHECK(collision_bound(p, q) == multi_collision_bound(p, q, 2));
                        if (m >= n)
                            CHECK(oneway_bound(p, q) == collision_bound(p, q));
                    }
}

TEST_CASE("sponge bound spot values")
{
    const SpongeParams p(2, 1, 1, 1);
    REQUIRE(p.ell() == 1);
    CHECK(collision_bound(p, 0) == Rational(12, 2) + Rational(50, 2));
    CHECK(collision_bound(p, 1) == Rational(6561) * 31);
    CHECK(preimage_bound(p, 0) == Rational(4, 2) + Rational(18, 2));
    CHECK(multi_collision_bound(p, 0, 1) == 2 * (Rational(2) + Rational(9, 2)));
    const SpongeParams p2(1, 3, 1, 2);
    REQUIRE(p2.ell() == 3);
    CHECK(preimage_bound(p2, 1) == Rational(ipow(9, 6)) * (Rational(4, 4) + Rational(50, 8)));
    CHECK_THROWS_AS(multi_collision_bound(p, 0, 0), ParameterError);
}

TEST_CASE("ideal-cipher collision bound")
{
    CHECK(icm_collision_bound(3, 0) == Rational(3, 2));
    CHECK(icm_collision_bound(4, 1) == Rational(6 * 6561, 12));
    CHECK_THROWS_AS(icm_collision_bound(2, 1), ParameterError);
}

TEST_CASE("bound table matches the golden csv")
{
    std::ifstream in(std::string(PERMLIFT_TEST_DATA) + "/bound_table.csv");
    REQUIRE(in.good());
    const std::string golden((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto rows = bound_table();
    CHECK(rows.size() == 110);
    CHECK(bound_table_csv(rows) == golden);
}
