#include "permlift/experiments.hpp"
#include "permlift/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace permlift;

namespace {

ExperimentConfig cfg(const std::string& experiment, Elem n, std::uint64_t q, std::uint64_t k)
{
    ExperimentConfig c;
    c.experiment = experiment;
    c.n = n;
    c.q = q;
    c.k = k;
    return c;
}

Permutation noop(const Permutation& p, Elem, Elem) { return p; }

// swaps the inputs x and y instead of the outputs
Permutation swap_inputs(const Permutation& p, Elem x, Elem y)
{
    auto t = p.table();
    std::swap(t[x], t[y]);
    return Permutation(std::move(t));
}

}

TEST_CASE("experiment config json round trip")
{
    ExperimentConfig c = cfg("verify-lifting", 4, 2, 1);
    c.seed = 77;
    c.mode = "quantum";
    c.trials = 100;
    c.game = "fixed-point";
    c.out = "o.json";
    c.trace = "t.jsonl";
    c.ceiling = 5;
    const auto back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.seed == 77);
    CHECK(back.ceiling == 5);
    const auto defaults = config_from_json(nlohmann::json{{"experiment", "trace"}});
    CHECK(defaults.n == 4);
    CHECK(defaults.game == "battery");
}

TEST_CASE("algebra suites pass with the real reprogram")
{
    for (Elem n : {3u, 4u, 5u}) {
        CHECK(suite_inverse(n, 2).pass());
        CHECK(suite_commutativity(n, 2).pass());
        CHECK(suite_good_closed_form(n, 2).pass());
        CHECK(suite_partial(n, 2).pass());
        CHECK(suite_bad_probability(n, 2).pass());
    }
    CHECK(suite_uniformity(4, 1).pass());
    CHECK(suite_uniformity(4, 2).pass());
    CHECK(suite_cipher_single_key(3).pass());
    CHECK(suite_cipher_locality(3).pass());
    CHECK(suite_cipher_bad_probability(2, 3, 2).pass());
    const auto mc = suite_bad_probability_mc(64, 2, 2000, 3);
    CHECK(mc.pass());
    CHECK(mc.cases > 0);
}

TEST_CASE("algebra suites catch broken reprogramming")
{
    CHECK_FALSE(suite_good_closed_form(4, 1, noop).pass());
    CHECK_FALSE(suite_good_closed_form(4, 1, swap_inputs).pass());
}

TEST_CASE("verify-algebra report shape and determinism")
{
    const auto c = cfg("verify-algebra", 4, 1, 2);
    const auto a = run_experiment(c);
    const auto b = run_experiment(c);
    CHECK(a.at("verdict") == "pass");
    CHECK(a.contains("wall_clock_seconds"));
    CHECK(strip_wall_clock(a) == strip_wall_clock(b));
    CHECK_FALSE(strip_wall_clock(a).contains("wall_clock_seconds"));
    CHECK(a.at("results").size() >= 6);
    for (const auto& s : a.at("results"))
        CHECK(s.at("violations") == 0);
}

TEST_CASE("mutation hook makes verify-algebra fail")
{
    auto c = cfg("verify-algebra", 4, 1, 2);
    c.mutation = "noop-reprogram";
    CHECK(run_experiment(c).at("verdict") == "fail");
    c.mutation = "something-else";
    CHECK_THROWS_AS(run_experiment(c), ParameterError);
}

TEST_CASE("configuration errors")
{
    CHECK_THROWS_AS(run_experiment(cfg("verify-algebra", 9, 1, 2)), CapabilityError);
    auto raised = cfg("verify-algebra", 7, 1, 1);
    raised.ceiling = 6;
    CHECK_THROWS_AS(run_experiment(raised), CapabilityError);
    CHECK_THROWS_AS(run_experiment(cfg("verify-algebra", 4, 1, 4)), ParameterError);
    CHECK_THROWS_AS(run_experiment(cfg("no-such", 4, 1, 1)), ParameterError);
    auto mode = cfg("verify-lifting", 4, 1, 1);
    mode.mode = "telepathic";
    CHECK_THROWS_AS(run_experiment(mode), ParameterError);
    auto quantum = cfg("verify-lifting", 8, 1, 1);
    quantum.mode = "quantum";
    CHECK_THROWS_AS(run_experiment(quantum), CapabilityError);
    auto game = cfg("bound-table", 4, 1, 1);
    game.game = "no-such-game";
    CHECK_THROWS_AS(run_experiment(game), ParameterError);
    auto mc = cfg("verify-algebra", 64, 1, 1);
    mc.mode = "monte-carlo";
    CHECK_THROWS_AS(run_experiment(mc), ParameterError);
}

TEST_CASE("classical lifting experiment at n = 4")
{
    auto c = cfg("verify-lifting", 4, 1, 1);
    c.mode = "classical";
    const auto r = run_experiment(c);
    CHECK(r.at("verdict") == "pass");
    CHECK_FALSE(r.at("results").empty());
}

TEST_CASE("decomposition experiment at n = 4, one slot")
{
    const auto r = run_experiment(cfg("verify-decomposition", 4, 1, 1));
    CHECK(r.at("verdict") == "pass");
    for (const auto& s : r.at("results")) {
        CHECK(s.at("components") == s.at("expected_components"));
        CHECK(s.at("max_residual").get<double>() < 1e-9);
    }
}

TEST_CASE("trace experiment is seeded and writes jsonl")
{
    auto c = cfg("trace", 4, 1, 1);
    c.seed = 7;
    c.mode = "quantum";
    c.trace = "permlift_test_trace.jsonl";
    const auto a = strip_wall_clock(run_experiment(c));
    const auto b = strip_wall_clock(run_experiment(c));
    CHECK(a == b);
    CHECK(a.at("verdict") == "pass");
    CHECK(a.at("results")[0].at("external_queries").get<std::uint64_t>() <= 1);
    std::ifstream in(c.trace);
    REQUIRE(in.good());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        CHECK_NOTHROW((void)nlohmann::json::parse(line));
        ++lines;
    }
    CHECK(lines == a.at("results")[0].at("trace").size());
    std::remove(c.trace.c_str());
    c.mode = "classical";
    CHECK(run_experiment(c).at("verdict") == "pass");
}

TEST_CASE("bound-table experiment")
{
    auto c = cfg("bound-table", 10, 1, 1);
    c.game = "double-sided-zero";
    const auto r = run_experiment(c);
    REQUIRE(r.at("results").size() == 1);
    CHECK(r.at("results")[0].at("raw_bound") == "81/128");
    c.game = "sponge-collision";
    const auto s = run_experiment(c);
    CHECK(s.at("results").size() > 1);
    for (const auto& row : s.at("results"))
        CHECK(row.at("game") == "sponge-collision");
}
