#pragma once

#include "permlift/decomposition.hpp"
#include "permlift/lifting.hpp"

namespace permlift {

struct ExperimentConfig {
    std::string experiment;
    Elem n = 4;
    std::uint64_t q = 1;
    std::uint64_t k = 1;
    std::uint64_t seed = 0;
    std::string mode;  // verify-algebra: exhaustive | monte-carlo; verify-lifting: classical | quantum | interactive
    std::uint64_t trials = 0;
    std::string game = "battery";
    std::string out;
    std::string trace;
    /// Largest n accepted for exhaustive permutation enumeration.
    Elem ceiling = 6;
    /// Test hook: "noop-reprogram" runs the algebra suites against a broken reprogram.
    std::string mutation;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

struct SuiteResult {
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
    nlohmann::json detail = nlohmann::json::object();
    bool pass() const { return violations == 0; }
};

nlohmann::json to_json(const SuiteResult& s);

using ReprogramFn = std::function<Permutation(const Permutation&, Elem, Elem)>;

/// Pair lists of every length 1..k.
SuiteResult suite_inverse(Elem n, std::size_t k, const ReprogramFn& f = reprogram);
/// Disjoint tuples of every length 1..k, every ordering.
SuiteResult suite_commutativity(Elem n, std::size_t k, const ReprogramFn& f = reprogram);
SuiteResult suite_good_closed_form(Elem n, std::size_t k, const ReprogramFn& f = reprogram);
/// Every ordered subset of every good tuple.
SuiteResult suite_partial(Elem n, std::size_t k, const ReprogramFn& f = reprogram);
/// Count equality of π[x⃗*→π*(x⃗*)] over G[x⃗*], for each distinct x⃗* of length k.
SuiteResult suite_uniformity(Elem n, std::size_t k, const ReprogramFn& f = reprogram);
/// For every π and distinct x⃗* of length ≤ k: exact bad fraction over π* ≤ k²/n.
SuiteResult suite_bad_probability(Elem n, std::size_t k);
/// Sampled π* for fixed π (identity and one random) and x⃗* = (0..k-1); passes when p̂ − 3σ ≤ k²/n.
SuiteResult suite_bad_probability_mc(Elem n, std::size_t k, std::uint64_t samples, std::uint64_t seed);
/// Exhaustive agreement of 1-key cipher operations with their permutation versions.
SuiteResult suite_cipher_single_key(Elem n);
/// Reprogramming one key leaves the others unchanged (2-key ciphers).
SuiteResult suite_cipher_locality(Elem n);
/// Bad fraction over all E* for fixed E with `keys` keys, k ≤ 2 keyed targets.
SuiteResult suite_cipher_bad_probability(Key keys, Elem n, std::size_t k);

struct DecompositionSummary {
    std::string circuit;
    std::uint64_t slots = 0;
    std::uint64_t k = 0;
    std::uint64_t instances = 0;
    std::uint64_t skipped = 0;
    std::uint64_t components = 0;           // per instance
    std::uint64_t expected_components = 0;  // counted without enumeration
    double max_residual = 0;
    double bad_fraction = 0;  // skipped / all (π, π*, x⃗*)
    bool pass = false;
};

nlohmann::json to_json(const DecompositionSummary& s);

/// All good (π, π*) and distinct x⃗* of length k on n elements.
DecompositionSummary decomposition_sweep(const QuantumAdversary& a, Elem n, std::size_t k);

/// Circuits used by the decomposition experiment; all have at most two slots.
std::vector<std::shared_ptr<const QuantumAdversary>> decomposition_battery(Elem n);
/// Adversary/relation pairs for Monte Carlo lifting on larger domains; q bounds the query count.
std::vector<std::pair<std::shared_ptr<const QuantumAdversary>, Relation>> monte_carlo_battery(Elem n, std::uint64_t q);

/// Runs one experiment; the report carries "verdict" ("pass" or "fail") and "wall_clock_seconds".
/// Throws permlift::Error on configuration problems.
nlohmann::json run_experiment(const ExperimentConfig& c);

/// Report with the wall-clock field removed, for determinism checks.
nlohmann::json strip_wall_clock(nlohmann::json report);

}
