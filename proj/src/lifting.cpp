#include "permlift/lifting.hpp"

#include <cmath>

namespace permlift {

Rational classical_lift_factor(std::uint64_t q, std::uint64_t k, std::uint64_t n)
{
    return (1 - Rational(k * k, n)) / Rational(ipow(BigInt(2 * q + 1), static_cast<unsigned>(k)));
}

Rational quantum_lift_factor(std::uint64_t slots, std::uint64_t k, std::uint64_t n)
{
    return (1 - Rational(k * k, n)) / Rational(ipow(BigInt(4 * slots + 1), static_cast<unsigned>(2 * k)));
}

template <>
std::vector<Permutation> all_tables<Permutation>(Key key_count, Elem n)
{
    if (key_count != 1)
        throw PreconditionError("permutations have a single key");
    return all_permutations(n);
}

template <>
std::vector<Cipher> all_tables<Cipher>(Key key_count, Elem n)
{
    return all_ciphers(key_count, n);
}

namespace {

std::uint64_t q_of_slots(std::uint64_t slots) { return (slots + 1) / 2; }

// Distinct tuples of k key-0 points.
std::vector<std::vector<Point>> distinct_tuples(Elem n, std::size_t k)
{
    std::vector<std::vector<Point>> out;
    std::vector<Point> cur;
    std::function<void()> rec = [&]() {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (Elem x = 0; x < n; ++x) {
            bool used = false;
            for (auto p : cur)
                used |= p.value == x;
            if (used)
                continue;
            cur.push_back({0, x});
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

std::vector<Elem> fwd_values(const Permutation& t, const std::vector<Point>& xs)
{
    std::vector<Elem> ys;
    for (auto p : xs)
        ys.push_back(table_fwd(t, p));
    return ys;
}

bool lemma_event(const Relation& r, const Outcome& o, const std::vector<Point>& xs_star, const std::vector<Elem>& ys_star)
{
    return o.xs == xs_star && r.holds(o, ys_star);
}

template <class T>
double win_mass(const Relation& r, const T& t, const Distribution& d)
{
    double s = 0;
    for (const auto& [o, p] : d)
        if (wins(r, t, o))
            s += p;
    return s;
}

}

nlohmann::json to_json(const LiftResult& r)
{
    nlohmann::json j{{"model", r.model},   {"adversary", r.adversary},   {"game", r.game},
                     {"n", r.n},           {"q", r.q},                   {"slots", r.slots},
                     {"k", r.k},           {"p_a", r.p_a},               {"p_b", r.p_b},
                     {"factor", to_string(r.factor)}, {"factor_float", to_double(r.factor)},
                     {"rhs", to_double(r.factor) * r.p_a}, {"cases", r.cases}, {"pass", r.pass}};
    if (r.p_a_exact)
        j["p_a_exact"] = to_string(*r.p_a_exact);
    if (r.p_b_exact)
        j["p_b_exact"] = to_string(*r.p_b_exact);
    return j;
}

nlohmann::json to_json(const LemmaResult& r)
{
    return {{"adversary", r.adversary}, {"game", r.game},           {"slots", r.slots},
            {"k", r.k},                 {"instances", r.instances}, {"skipped", r.skipped},
            {"violations", r.violations}, {"min_slack", r.min_slack}, {"pass", r.violations == 0}};
}

nlohmann::json to_json(const MonteCarloResult& r)
{
    return {{"adversary", r.adversary},
            {"game", r.game},
            {"n", r.n},
            {"slots", r.slots},
            {"k", r.k},
            {"trials", r.trials},
            {"mean_a", r.mean_a},
            {"mean_b", r.mean_b},
            {"mean_diff", r.mean_diff},
            {"se_diff", r.se_diff},
            {"interval_3sigma", {r.mean_diff - 3 * r.se_diff, r.mean_diff + 3 * r.se_diff}},
            {"factor", to_string(r.factor)},
            {"pass", r.pass}};
}

template <class T>
LiftResult classical_lift_exact(const ClassicalAdversary& a, const Relation& r, Key key_count, Elem n, std::size_t k)
{
    const std::uint64_t coins = a.coin_count();
    if (coins == 0)
        throw CapabilityError("exact lifting needs an adversary with enumerable coins");
    const auto tables = all_tables<T>(key_count, n);
    const auto choices = enumerate_sim_choices(a.budget(), k, false);
    BigInt wins_a = 0, wins_b = 0;
    for (const auto& star : tables) {
        for (std::uint64_t coin = 0; coin < coins; ++coin)
            wins_a += wins(r, star, run_classical(a, star, coin));
        for (const auto& pi : tables)
            for (const auto& ch : choices)
                for (std::uint64_t coin = 0; coin < coins; ++coin) {
                    TableOracle<T> ext(star, k);
                    wins_b += wins(r, star, run_classical_sim(a, pi, ext, ch, coin));
                }
    }
    const BigInt N = tables.size();
    LiftResult res;
    res.model = "classical";
    res.adversary = a.name();
    res.game = r.name;
    res.n = n;
    res.q = a.budget();
    res.slots = a.budget();
    res.k = k;
    res.p_a_exact = Rational(wins_a, N * coins);
    res.p_b_exact = Rational(wins_b, N * N * choices.size() * coins);
    res.p_a = to_double(*res.p_a_exact);
    res.p_b = to_double(*res.p_b_exact);
    res.factor = classical_lift_factor(a.budget(), k, n);
    res.cases = static_cast<std::uint64_t>(N * N * choices.size() * coins);
    res.pass = *res.p_b_exact >= res.factor * *res.p_a_exact;
    return res;
}

template <class T>
LiftResult quantum_lift_exact(const QuantumAdversary& a, const Relation& r, Key key_count, Elem n, std::size_t k)
{
    const auto tables = all_tables<T>(key_count, n);
    const auto choices = enumerate_sim_choices(a.slot_count(), k, true);
    double sum_a = 0, sum_b = 0;
    for (const auto& star : tables) {
        sum_a += win_mass(r, star, run_quantum(a, star));
        for (const auto& pi : tables)
            for (const auto& ch : choices) {
                // exact runs sum over measurement branches; each branch queries ext at most k times
                TableOracle<T> ext(star);
                sum_b += win_mass(r, star, run_quantum_sim_exact(a, pi, ext, ch));
            }
    }
    const double N = static_cast<double>(tables.size());
    LiftResult res;
    res.model = "quantum";
    res.adversary = a.name;
    res.game = r.name;
    res.n = n;
    res.slots = a.slot_count();
    res.q = q_of_slots(res.slots);
    res.k = k;
    res.p_a = sum_a / N;
    res.p_b = sum_b / (N * N * static_cast<double>(choices.size()));
    res.factor = quantum_lift_factor(res.slots, k, n);
    res.cases = tables.size() * tables.size() * choices.size();
    res.pass = res.p_b >= to_double(res.factor) * res.p_a - 1e-12;
    return res;
}

template LiftResult classical_lift_exact<Permutation>(const ClassicalAdversary&, const Relation&, Key, Elem, std::size_t);
template LiftResult classical_lift_exact<Cipher>(const ClassicalAdversary&, const Relation&, Key, Elem, std::size_t);
template LiftResult quantum_lift_exact<Permutation>(const QuantumAdversary&, const Relation&, Key, Elem, std::size_t);
template LiftResult quantum_lift_exact<Cipher>(const QuantumAdversary&, const Relation&, Key, Elem, std::size_t);

namespace {

// Acceptance probability of a two-message challenger when the single reply is drawn from `replies(m1)`.
double accept_probability(const Challenger& c, const Permutation& star, std::uint64_t rnd,
                          const std::function<Distribution(const Message&)>& replies)
{
    std::optional<Message> m1;
    TableOracle<Permutation> probe(star, c.budget());
    const bool fixed = c.play(probe, rnd, [&](const Message& m) {
        if (m1)
            throw ProtocolError("multi-round challengers are not modeled");
        m1 = m;
        return Outcome{};
    });
    if (!m1)
        return fixed ? 1.0 : 0.0;
    double acc = 0;
    for (const auto& [out, p] : replies(*m1)) {
        TableOracle<Permutation> o(star, c.budget());
        bool called = false;
        const bool v = c.play(o, rnd, [&](const Message& m) {
            if (called || m != *m1)
                throw ProtocolError("challenger is not deterministic in its randomness");
            called = true;
            return out;
        });
        if (v)
            acc += p;
    }
    return acc;
}

}

LiftResult interactive_lift_exact(const InteractiveQuantumAdversary& a, const Challenger& c, Elem n)
{
    std::map<Message, QuantumAdversary> cache;
    std::optional<std::size_t> slots;
    auto circuit_for = [&](const Message& m) -> const QuantumAdversary& {
        auto it = cache.find(m);
        if (it == cache.end()) {
            it = cache.emplace(m, a.build(m)).first;
            if (slots && *slots != it->second.slot_count())
                throw PreconditionError("adversary circuits differ in slot count across messages");
            slots = it->second.slot_count();
        }
        return it->second;
    };
    const std::size_t k = c.budget();
    const auto tables = all_permutations(n);
    const std::uint64_t rnds = c.rnd_count();
    // Slot count is only known once a message has been seen; probe with the first table.
    {
        std::optional<Message> m1;
        TableOracle<Permutation> probe(tables.front(), k);
        c.play(probe, 0, [&](const Message& m) {
            m1 = m;
            return Outcome{};
        });
        circuit_for(m1.value_or(Message{}));
    }
    const auto choices = enumerate_sim_choices(*slots, k, true);
    double sum_a = 0, sum_b = 0;
    for (const auto& star : tables)
        for (std::uint64_t rnd = 0; rnd < rnds; ++rnd) {
            sum_a += accept_probability(c, star, rnd, [&](const Message& m) { return run_quantum(circuit_for(m), star); });
            for (const auto& pi : tables)
                for (const auto& ch : choices)
                    sum_b += accept_probability(c, star, rnd, [&](const Message& m) {
                        TableOracle<Permutation> ext(star);
                        return run_quantum_sim_exact(circuit_for(m), pi, ext, ch);
                    });
        }
    const double N = static_cast<double>(tables.size());
    LiftResult res;
    res.model = "interactive";
    res.adversary = a.name;
    res.game = c.name();
    res.n = n;
    res.slots = *slots;
    res.q = q_of_slots(res.slots);
    res.k = k;
    res.p_a = sum_a / (N * static_cast<double>(rnds));
    res.p_b = sum_b / (N * N * static_cast<double>(rnds) * static_cast<double>(choices.size()));
    res.factor = quantum_lift_factor(res.slots, k, n);
    res.cases = tables.size() * tables.size() * rnds * choices.size();
    res.pass = res.p_b >= to_double(res.factor) * res.p_a - 1e-12;
    return res;
}

LemmaResult classical_lemma_exact(const ClassicalAdversary& a, const Relation& r, Elem n, std::size_t k)
{
    const std::uint64_t coins = a.coin_count();
    if (coins == 0)
        throw CapabilityError("exact lemma check needs enumerable coins");
    if (r.arity != k)
        throw PreconditionError("relation arity differs from k");
    const auto perms = all_permutations(n);
    const auto choices = enumerate_sim_choices(a.budget(), k, false);
    const BigInt factor = ipow(BigInt(2 * a.budget() + 1), static_cast<unsigned>(k));
    LemmaResult res{a.name(), r.name, a.budget(), k};
    res.min_slack = INFINITY;
    for (const auto& xs : distinct_tuples(n, k))
        for (const auto& pi : perms)
            for (const auto& star : perms) {
                if (!table_in_G(pi, star, xs)) {
                    ++res.skipped;
                    continue;
                }
                ++res.instances;
                const auto ys = fwd_values(star, xs);
                std::vector<std::size_t> all(k);
                for (std::size_t j = 0; j < k; ++j)
                    all[j] = j;
                const Permutation target = table_reprogram_targets(pi, star, xs, all);
                BigInt lhs = 0, rhs = 0;
                for (std::uint64_t coin = 0; coin < coins; ++coin) {
                    rhs += lemma_event(r, run_classical(a, target, coin), xs, ys);
                    for (const auto& ch : choices) {
                        TableOracle<Permutation> ext(star, k);
                        lhs += lemma_event(r, run_classical_sim(a, pi, ext, ch, coin), xs, ys);
                    }
                }
                // lhs/(|ch|·coins) ≥ rhs/(coins·factor)
                const Rational l(lhs, BigInt(choices.size()) * coins);
                const Rational rr(rhs, factor * coins);
                if (l < rr)
                    ++res.violations;
                res.min_slack = std::min(res.min_slack, to_double(l - rr));
            }
    return res;
}

LemmaResult quantum_lemma_exact(const QuantumAdversary& a, const Relation& r, Elem n, std::size_t k)
{
    if (r.arity != k)
        throw PreconditionError("relation arity differs from k");
    const auto perms = all_permutations(n);
    const std::size_t Q = a.slot_count();
    const auto choices = enumerate_sim_choices(Q, k, true);
    const double factor = std::pow(4.0 * Q + 1, 2.0 * k);
    LemmaResult res{a.name, r.name, Q, k};
    res.min_slack = INFINITY;
    for (const auto& xs : distinct_tuples(n, k))
        for (const auto& pi : perms)
            for (const auto& star : perms) {
                if (!table_in_G(pi, star, xs)) {
                    ++res.skipped;
                    continue;
                }
                ++res.instances;
                const auto ys = fwd_values(star, xs);
                std::vector<std::size_t> all(k);
                for (std::size_t j = 0; j < k; ++j)
                    all[j] = j;
                double rhs = 0, lhs = 0;
                for (const auto& [o, p] : run_quantum(a, table_reprogram_targets(pi, star, xs, all)))
                    if (lemma_event(r, o, xs, ys))
                        rhs += p;
                for (const auto& ch : choices) {
                    TableOracle<Permutation> ext(star);
                    for (const auto& [o, p] : run_quantum_sim_exact(a, pi, ext, ch))
                        if (lemma_event(r, o, xs, ys))
                            lhs += p;
                }
                lhs /= static_cast<double>(choices.size());
                const double slack = lhs - rhs / factor;
                if (slack < -1e-12)
                    ++res.violations;
                res.min_slack = std::min(res.min_slack, slack);
            }
    return res;
}

MonteCarloResult quantum_lift_monte_carlo(const QuantumAdversary& a, const Relation& r, Elem n, std::size_t k,
                                          std::uint64_t trials, std::uint64_t seed)
{
    if (trials < 2)
        throw ParameterError("Monte Carlo needs at least two trials");
    auto shared = std::make_shared<const QuantumAdversary>(a);
    const LiftedAdversary<Permutation> b(shared, k, 1, n);
    MonteCarloResult res;
    res.adversary = a.name;
    res.game = r.name;
    res.n = n;
    res.slots = a.slot_count();
    res.k = k;
    res.trials = trials;
    res.factor = quantum_lift_factor(res.slots, k, n);
    const double f = to_double(res.factor);
    double sum_a = 0, sum_b = 0, sum_d = 0, sum_d2 = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = stream(seed, {t});
        const Permutation star = random_permutation(n, rng);
        const double pa = win_mass(r, star, run_quantum(a, star));
        TableOracle<Permutation> ext(star, k);
        const double wb = wins(r, star, b.run(ext, rng())) ? 1.0 : 0.0;
        const double d = wb - f * pa;
        sum_a += pa;
        sum_b += wb;
        sum_d += d;
        sum_d2 += d * d;
    }
    const double T = static_cast<double>(trials);
    res.mean_a = sum_a / T;
    res.mean_b = sum_b / T;
    res.mean_diff = sum_d / T;
    const double var = std::max(0.0, (sum_d2 - T * res.mean_diff * res.mean_diff) / (T - 1));
    res.se_diff = std::sqrt(var / T);
    res.pass = res.mean_diff + 3 * res.se_diff >= 0;
    return res;
}

}
