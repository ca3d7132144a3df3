#pragma once

#include "permlift/rational.hpp"
#include "permlift/rng.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace permlift {

using Elem = std::uint32_t;

/// Bijection on {0..n-1} with both lookup directions materialized.
class Permutation {
public:
    Permutation() = default;
    /// Throws DomainError unless fwd is a bijection on {0..fwd.size()-1}.
    explicit Permutation(std::vector<Elem> fwd);

    static Permutation identity(Elem n);

    Elem size() const { return static_cast<Elem>(fwd_.size()); }
    Elem operator()(Elem x) const { return fwd_[x]; }
    Elem inv(Elem y) const { return inv_[y]; }
    /// Checked lookups.
    Elem at(Elem x) const;
    Elem inv_at(Elem y) const;

    Permutation inverse() const;
    /// this ∘ other, i.e. z ↦ this(other(z)).
    Permutation compose(const Permutation& other) const;
    const std::vector<Elem>& table() const { return fwd_; }

    /// Position in the lexicographic order of all permutations of the same size.
    std::uint64_t rank() const;

    bool operator==(const Permutation& o) const { return fwd_ == o.fwd_; }
    bool operator<(const Permutation& o) const { return fwd_ < o.fwd_; }

private:
    std::vector<Elem> fwd_;
    std::vector<Elem> inv_;
};

struct Pair {
    Elem x = 0;
    Elem y = 0;
    bool operator==(const Pair&) const = default;
};

using PairTuple = std::vector<Pair>;

struct HitMiss {
    Elem x_hit = 0;
    Elem x_miss = 0;
    Elem y_hit = 0;
    Elem y_miss = 0;
    bool operator==(const HitMiss&) const = default;
};

/// π[x→y]: x ↦ y, π⁻¹(y) ↦ π(x), everything else unchanged.
Permutation reprogram(const Permutation& pi, Elem x, Elem y);
Permutation reprogram_seq(const Permutation& pi, const PairTuple& pairs);

bool is_disjoint(const PairTuple& pairs);
bool is_good(const Permutation& pi, const PairTuple& pairs);
/// Throws PreconditionError when xs has repeats.
bool in_G(const Permutation& pi, const Permutation& pi_star, const std::vector<Elem>& xs);
PairTuple target_pairs(const Permutation& pi_star, const std::vector<Elem>& xs);
/// Throws PreconditionError unless in_G(pi, pi_star, xs).
std::vector<HitMiss> hit_miss(const Permutation& pi, const Permutation& pi_star, const std::vector<Elem>& xs);

Rational bad_probability_bound(std::uint64_t k, std::uint64_t n);

std::uint64_t factorial(unsigned n);
/// All n! permutations in lexicographic order. n ≤ 10.
std::vector<Permutation> all_permutations(Elem n);
/// Calls f on every permutation in lexicographic order without materializing the list.
void for_each_permutation(Elem n, const std::function<void(const Permutation&)>& f);
Permutation random_permutation(Elem n, Rng& rng);

bool is_power_of_two(std::uint64_t n);
/// XOR on elements; needs power-of-two domains, which callers check.
inline Elem bxor(Elem a, Elem b) { return a ^ b; }

nlohmann::json to_json(const Permutation& p);
Permutation permutation_from_json(const nlohmann::json& j);
Permutation load_permutation(const std::string& path);
void save_permutation(const Permutation& p, const std::string& path);

}
