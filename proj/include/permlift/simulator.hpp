#pragma once

#include "permlift/circuit.hpp"
#include "permlift/errors.hpp"

#include <compare>
#include <map>
#include <memory>

namespace permlift {

/// A query point. Permutations use key 0 throughout.
struct Point {
    Key key = 0;
    Elem value = 0;
    auto operator<=>(const Point&) const = default;
};

struct Outcome {
    std::vector<Point> xs;
    std::uint64_t z = 0;
    auto operator<=>(const Outcome&) const = default;
};

using Distribution = std::map<Outcome, double>;

inline constexpr int kBot = -1;

/// v_j is a 1-based slot number or kBot; b_j is 0 (hit), 1 (miss) or kBot; c_j is 0 (reprogram
/// before answering), 1 (after) or kBot. Classical choices leave c empty.
struct SimChoice {
    std::vector<int> v;
    std::vector<int> b;
    std::vector<int> c;

    std::size_t k() const { return v.size(); }
    bool has_c() const { return !c.empty(); }
    bool valid(std::size_t Q) const;
    /// Index j with v_j == slot, or -1.
    int fired_at(std::size_t slot) const;
    std::size_t fired_count() const;
    int sign() const;
    bool operator==(const SimChoice&) const = default;
};

std::vector<SimChoice> enumerate_sim_choices(std::size_t Q, std::size_t k, bool with_c);
/// Size of the constrained set, counted without enumerating it.
std::uint64_t sim_choice_count(std::size_t Q, std::size_t k, bool with_c);
/// Uniform over the constrained set (rejection from the product set).
SimChoice sample_sim_choice(std::size_t Q, std::size_t k, bool with_c, Rng& rng);
nlohmann::json to_json(const SimChoice& c);

// ---- table access shared by permutation and cipher code paths ----

inline void require_key0(Point q)
{
    if (q.key != 0)
        throw DomainError("permutation query with nonzero key");
}
inline Elem table_fwd(const Permutation& p, Point q)
{
    require_key0(q);
    return p.at(q.value);
}
inline Elem table_bwd(const Permutation& p, Point q)
{
    require_key0(q);
    return p.inv_at(q.value);
}
inline Elem table_fwd(const Cipher& e, Point q) { return e.perm(q.key).at(q.value); }
inline Elem table_bwd(const Cipher& e, Point q) { return e.perm(q.key).inv_at(q.value); }
inline Permutation table_reprogram(const Permutation& p, const Triple& t)
{
    require_key0({t.key, 0});
    return reprogram(p, t.x, t.y);
}
inline Cipher table_reprogram(const Cipher& e, const Triple& t) { return cipher_reprogram(e, t); }
inline Elem table_size(const Permutation& p) { return p.size(); }
inline Elem table_size(const Cipher& e) { return e.size(); }
inline Key table_keys(const Permutation&) { return 1; }
inline Key table_keys(const Cipher& e) { return e.key_count(); }
bool table_in_G(const Permutation& pi, const Permutation& pi_star, const std::vector<Point>& xs);
bool table_in_G(const Cipher& e, const Cipher& e_star, const std::vector<Point>& xs);
std::vector<CipherHitMiss> table_hit_miss(const Permutation& pi, const Permutation& pi_star, const std::vector<Point>& xs);
std::vector<CipherHitMiss> table_hit_miss(const Cipher& e, const Cipher& e_star, const std::vector<Point>& xs);
template <class T>
T table_reprogram_targets(const T& t, const T& t_star, const std::vector<Point>& xs, const std::vector<std::size_t>& which);

// ---- classical access ----

struct ClassicalQuery {
    Direction dir = Direction::forward;
    Point point;
};

class ClassicalOracle {
public:
    virtual ~ClassicalOracle() = default;
    virtual Elem query(const ClassicalQuery& q) = 0;
};

/// Answers from a fixed table, counting queries and enforcing an optional budget.
template <class T>
class TableOracle : public ClassicalOracle {
public:
    explicit TableOracle(const T& t, std::size_t budget = SIZE_MAX) : t_(t), budget_(budget) {}
    // holds a reference; temporaries would dangle
    TableOracle(T&&, std::size_t = SIZE_MAX) = delete;
    Elem query(const ClassicalQuery& q) override
    {
        if (++count_ > budget_)
            throw ProtocolError("query budget exceeded");
        log_.push_back(q);
        return q.dir == Direction::forward ? table_fwd(t_, q.point) : table_bwd(t_, q.point);
    }
    std::size_t count() const { return count_; }
    const std::vector<ClassicalQuery>& log() const { return log_; }

private:
    const T& t_;
    std::size_t budget_;
    std::size_t count_ = 0;
    std::vector<ClassicalQuery> log_;
};

class ClassicalAdversary {
public:
    virtual ~ClassicalAdversary() = default;
    virtual std::string name() const = 0;
    virtual std::size_t budget() const = 0;
    /// Number of coin values enumerated by exact harnesses; 0 means sample-only.
    virtual std::uint64_t coin_count() const { return 1; }
    virtual Outcome run(ClassicalOracle& oracle, std::uint64_t coins) const = 0;
};

class FunctionAdversary : public ClassicalAdversary {
public:
    using Body = std::function<Outcome(ClassicalOracle&, std::uint64_t)>;
    FunctionAdversary(std::string name, std::size_t budget, std::uint64_t coins, Body body)
        : name_(std::move(name)), budget_(budget), coins_(coins), body_(std::move(body))
    {
    }
    std::string name() const override { return name_; }
    std::size_t budget() const override { return budget_; }
    std::uint64_t coin_count() const override { return coins_; }
    Outcome run(ClassicalOracle& o, std::uint64_t coins) const override { return body_(o, coins); }

private:
    std::string name_;
    std::size_t budget_;
    std::uint64_t coins_;
    Body body_;
};

/// Plain run of A against a table with A's budget enforced.
template <class T>
Outcome run_classical(const ClassicalAdversary& a, const T& t, std::uint64_t coins)
{
    TableOracle<T> o(t, a.budget());
    return a.run(o, coins);
}

// ---- quantum adversaries ----

struct OutputPoint {
    std::optional<std::size_t> key;
    std::size_t value = 0;
};

/// Normal-form circuit plus which registers are read out as (x⃗, z).
struct QuantumAdversary {
    std::string name;
    Circuit circuit;
    std::vector<OutputPoint> outputs;
    std::vector<std::size_t> z_regs;

    std::size_t slot_count() const { return circuit.slot_count(); }
    std::vector<std::size_t> measured_regs() const;
    Outcome decode(const Values& measured) const;
};

Distribution output_distribution(const QuantumAdversary& a, const StateVector& s);
template <class T>
Distribution run_quantum(const QuantumAdversary& a, const T& t);

// ---- simulators ----

struct TraceEvent {
    std::size_t slot = 0;
    Direction dir = Direction::forward;
    std::optional<Point> query;     // classical query value
    std::optional<Point> measured;  // quantum measurement outcome
    std::optional<Elem> answer;     // classical answer
    std::optional<Triple> pair;     // reprogramming applied at this slot
    std::string when;               // "before" or "after" when pair is set
};
using Trace = std::vector<TraceEvent>;

nlohmann::json to_json(const TraceEvent& e);
std::string trace_to_jsonl(const Trace& t);

/// Current oracle plus the reprogramming log that rebuilds it from the initial table.
template <class T>
class StatefulOracle {
public:
    explicit StatefulOracle(T init) : init_(init), cur_(std::move(init)) {}
    const T& current() const { return cur_; }
    void reprogram(const Triple& t)
    {
        cur_ = table_reprogram(cur_, t);
        log_.push_back(t);
    }
    const std::vector<Triple>& log() const { return log_; }
    T replay() const
    {
        T t = init_;
        for (const auto& p : log_)
            t = table_reprogram(t, p);
        return t;
    }

private:
    T init_;
    T cur_;
    std::vector<Triple> log_;
};

/// The pair chosen at a fired slot: hit queries go straight to the external oracle,
/// miss queries are first routed through the internal table.
template <class T>
Triple reprogram_target(const T& pi, ClassicalOracle& ext, Direction dir, Point q, int b);

template <class T>
Outcome run_classical_sim(const ClassicalAdversary& a, const T& pi, ClassicalOracle& ext, const SimChoice& choice,
                          std::uint64_t coins, Trace* trace = nullptr);

/// Branches over every measurement outcome; weights are Born probabilities.
template <class T>
Distribution run_quantum_sim_exact(const QuantumAdversary& a, const T& pi, ClassicalOracle& ext, const SimChoice& choice);

template <class T>
Outcome run_quantum_sim_sample(const QuantumAdversary& a, const T& pi, ClassicalOracle& ext, const SimChoice& choice,
                               Rng& rng, Trace* trace = nullptr);

/// B: samples an internal uniform table and a choice, then runs the matching simulator with its
/// own oracle as the external one. At most k external queries per run.
template <class T>
class LiftedAdversary : public ClassicalAdversary {
public:
    LiftedAdversary(std::shared_ptr<const ClassicalAdversary> a, std::size_t k, Key key_count, Elem n);
    LiftedAdversary(std::shared_ptr<const QuantumAdversary> a, std::size_t k, Key key_count, Elem n);

    std::string name() const override;
    std::size_t budget() const override { return k_; }
    std::uint64_t coin_count() const override { return 0; }
    Outcome run(ClassicalOracle& ext, std::uint64_t coins) const override;

private:
    std::shared_ptr<const ClassicalAdversary> classical_;
    std::shared_ptr<const QuantumAdversary> quantum_;
    std::size_t k_;
    Key key_count_;
    Elem n_;
};

template <class T>
LiftedAdversary<T> build_lifted_adversary(std::shared_ptr<const ClassicalAdversary> a, std::size_t k, Key key_count, Elem n)
{
    return LiftedAdversary<T>(std::move(a), k, key_count, n);
}

template <class T>
LiftedAdversary<T> build_lifted_adversary(std::shared_ptr<const QuantumAdversary> a, std::size_t k, Key key_count, Elem n)
{
    return LiftedAdversary<T>(std::move(a), k, key_count, n);
}

}
