#pragma once

#include "permlift/simulator.hpp"

#include <functional>

namespace permlift {

/// R ⊆ X^k × X^k × Z. `output_only` marks relations that ignore x⃗ and z.
struct Relation {
    std::string name;
    std::size_t arity = 1;
    std::function<bool(const std::vector<Point>& xs, const std::vector<Elem>& ys, std::uint64_t z)> pred;
    bool enumerable = true;
    bool output_only = false;

    bool holds(const Outcome& o, const std::vector<Elem>& ys) const { return pred(o.xs, ys, o.z); }
};

/// True iff the table sends the output points to a satisfying tuple.
template <class T>
bool wins(const Relation& r, const T& t, const Outcome& o)
{
    if (o.xs.size() != r.arity)
        return false;
    std::vector<Elem> ys;
    for (auto p : o.xs)
        ys.push_back(table_fwd(t, p));
    return r.holds(o, ys);
}

/// Low n_half bits of x and y both zero, on a domain of 2^{2·n_half} elements.
Relation relation_double_sided_zero(unsigned n_half);
/// Same relation addressed by total bit width; odd widths are a ParameterError.
Relation relation_double_sided_zero_bits(unsigned total_bits);
Relation relation_fixed_point();
/// y = x + 1 mod n.
Relation relation_successor(Elem n);
/// k=1 relation given by its satisfying pairs.
Relation relation_from_pairs(const std::string& name, const std::vector<Pair>& pairs);
/// File format: {"name": str?, "pairs": [[x, y], ...]}.
Relation load_relation(const std::string& path);
/// y = target, x free.
Relation relation_preimage(Elem target);
/// All k outputs equal.
Relation relation_output_collision(std::size_t k);
Relation relation_empty(std::size_t k);
Relation relation_full(std::size_t k);

/// max over rows and columns of the incidence on {0..n-1}², taking z = 0.
std::uint64_t r_max(const Relation& r, Elem n);

class BudgetExceeded : public CapabilityError {
public:
    BudgetExceeded(const std::string& what, Rational partial) : CapabilityError(what), partial_(std::move(partial)) {}
    /// Value of the best strategy found before the limit hit; a lower bound on the optimum.
    const Rational& partial() const { return partial_; }

private:
    Rational partial_;
};

struct BestClassical {
    Rational value;
    std::uint64_t nodes = 0;
};

/// Optimal k-query adaptive deterministic strategy, success averaged over all n! permutations.
/// Throws BudgetExceeded past `node_budget` search nodes.
BestClassical best_k_classical(const Relation& r, Elem n, std::size_t k, std::uint64_t node_budget = 50'000'000);

// ---- bound registry ----

struct GameParams {
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t k = 1;
    std::optional<std::uint64_t> r_max;
    // sponge games: n is the output width
    std::uint64_t r = 0;
    std::uint64_t c = 0;
    std::uint64_t m = 0;
};

struct BoundReport {
    std::string game;
    GameParams params;
    Rational raw;
    Rational clamped;
    std::optional<double> measured;
    std::string verdict;
};

/// Ids: double-sided-zero (n = half width in bits), fixed-point (n = N), generalized (n = N, r_max),
/// generalized:<relation file> (n = N), icm-collision (n = block bits), sponge-preimage,
/// sponge-onewayness, sponge-collision, sponge-multicollision (r, c, m set; n = output bits).
BoundReport game_bound(const std::string& id, const GameParams& p);
std::vector<std::string> game_ids();
nlohmann::json to_json(const BoundReport& r);

/// 8(8q+1)² r_max / N.
Rational generalized_double_sided_bound(std::uint64_t q, std::uint64_t r_max, const BigInt& N);

// ---- interactive games ----

using Message = std::vector<Elem>;

struct Round {
    Message sent;
    Outcome reply;
    bool operator==(const Round&) const = default;
};

/// What the challenger saw: its queries, the answers, and the message transcript.
struct View {
    std::vector<Point> xs;
    std::vector<Elem> ys;
    std::vector<Round> transcript;
};

/// Deterministic once `rnd` is fixed. `adversary` is called once per round with the challenger's message.
class Challenger {
public:
    using Reply = std::function<Outcome(const Message&)>;
    virtual ~Challenger() = default;
    virtual std::string name() const = 0;
    virtual std::size_t budget() const = 0;
    /// Randomness values enumerated by exact harnesses.
    virtual std::uint64_t rnd_count() const { return 1; }
    virtual bool play(ClassicalOracle& oracle, std::uint64_t rnd, const Reply& adversary) const = 0;
};

/// Plays with a recording oracle; returns the verdict and fills `view`.
bool run_challenger(const Challenger& c, ClassicalOracle& oracle, std::uint64_t rnd, const Challenger::Reply& adversary,
                    View& view);

/// Replays the challenger against the view; any inconsistency rejects.
bool ver_view(const Challenger& c, std::uint64_t rnd, const View& view);

/// Sends nothing, then queries the reply's points and checks R.
std::shared_ptr<Challenger> relation_challenger(Relation r);
/// Samples x = rnd in [n], queries y = π*(x), sends y, accepts iff the reply's first point is x.
std::shared_ptr<Challenger> oneway_challenger(Elem n);
/// Queries nothing, talks to nobody, accepts.
std::shared_ptr<Challenger> zero_message_challenger();
/// Queries x twice, sends nothing, accepts any reply.
std::shared_ptr<Challenger> repeat_query_challenger(Elem x);

}
