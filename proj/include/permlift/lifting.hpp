#pragma once

#include "permlift/battery.hpp"

namespace permlift {

struct LiftResult {
    std::string model;  // classical, quantum or interactive
    std::string adversary;
    std::string game;
    Elem n = 0;
    std::uint64_t q = 0;      // queries in the lifting-theorem sense
    std::uint64_t slots = 0;  // simulator slots (normal-form Q, or the classical budget)
    std::uint64_t k = 0;
    double p_a = 0;
    double p_b = 0;
    std::optional<Rational> p_a_exact;
    std::optional<Rational> p_b_exact;
    Rational factor;
    std::uint64_t cases = 0;  // enumeration cardinality
    bool pass = false;
};

nlohmann::json to_json(const LiftResult& r);

/// (1 − k²/n)/(2q+1)^k.
Rational classical_lift_factor(std::uint64_t q, std::uint64_t k, std::uint64_t n);
/// (1 − k²/n)/(4Q+1)^{2k}; equals (8q+1)^{2k} in the denominator for Q = 2q.
Rational quantum_lift_factor(std::uint64_t slots, std::uint64_t k, std::uint64_t n);

/// Every table of the given shape: all permutations, or all ciphers with `key_count` keys.
template <class T>
std::vector<T> all_tables(Key key_count, Elem n);

/// Exact Pr[A wins] and Pr[B wins] over all π*, internal π, choices and coins. Success is
/// R(x⃗, π*(x⃗), z) for the relation's arity.
template <class T>
LiftResult classical_lift_exact(const ClassicalAdversary& a, const Relation& r, Key key_count, Elem n, std::size_t k);
template <class T>
LiftResult quantum_lift_exact(const QuantumAdversary& a, const Relation& r, Key key_count, Elem n, std::size_t k);

/// Two-message games: the challenger may query, sends one message, gets one reply, may query again.
LiftResult interactive_lift_exact(const InteractiveQuantumAdversary& a, const Challenger& c, Elem n);

struct LemmaResult {
    std::string adversary;
    std::string game;
    std::uint64_t slots = 0;
    std::uint64_t k = 0;
    std::uint64_t instances = 0;  // good (π, π*, x⃗*) triples checked
    std::uint64_t skipped = 0;    // not good
    std::uint64_t violations = 0;
    double min_slack = 0;  // min over instances of LHS − RHS/factor
};

nlohmann::json to_json(const LemmaResult& r);

/// Measure-and-reprogram inequality for every good (π, π*) and distinct x⃗* on n elements.
LemmaResult classical_lemma_exact(const ClassicalAdversary& a, const Relation& r, Elem n, std::size_t k);
LemmaResult quantum_lemma_exact(const QuantumAdversary& a, const Relation& r, Elem n, std::size_t k);

struct MonteCarloResult {
    std::string adversary;
    std::string game;
    Elem n = 0;
    std::uint64_t slots = 0;
    std::uint64_t k = 0;
    std::uint64_t trials = 0;
    double mean_a = 0;
    double mean_b = 0;
    double mean_diff = 0;  // mean of win_B − factor·Pr[A wins | π*]
    double se_diff = 0;
    Rational factor;
    bool pass = false;  // mean_diff + 3·se_diff ≥ 0
};

nlohmann::json to_json(const MonteCarloResult& r);

/// Per trial: fresh π*, exact Pr[A wins | π*], one sampled run of the lifted adversary against π*.
MonteCarloResult quantum_lift_monte_carlo(const QuantumAdversary& a, const Relation& r, Elem n, std::size_t k,
                                          std::uint64_t trials, std::uint64_t seed);

}
