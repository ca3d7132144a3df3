#include "permlift/simulator.hpp"

#include <set>
#include <sstream>

namespace permlift {

bool SimChoice::valid(std::size_t Q) const
{
    if (b.size() != v.size() || (has_c() && c.size() != v.size()))
        return false;
    std::set<int> used;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == kBot) {
            if (b[j] != kBot || (has_c() && c[j] != kBot))
                return false;
            continue;
        }
        if (v[j] < 1 || static_cast<std::size_t>(v[j]) > Q || !used.insert(v[j]).second)
            return false;
        if (b[j] != 0 && b[j] != 1)
            return false;
        if (has_c() && c[j] != 0 && c[j] != 1)
            return false;
    }
    return true;
}

int SimChoice::fired_at(std::size_t slot) const
{
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != kBot && static_cast<std::size_t>(v[j]) == slot)
            return static_cast<int>(j);
    return -1;
}

std::size_t SimChoice::fired_count() const
{
    std::size_t n = 0;
    for (int x : v)
        n += (x != kBot);
    return n;
}

int SimChoice::sign() const
{
    int s = 1;
    for (int x : c)
        if (x == 1)
            s = -s;
    return s;
}

namespace {

// Option o in [0, w*Q]: 0 is ⊥, otherwise slot, b and c packed as below.
void decode_option(std::size_t o, bool with_c, int& v, int& b, int& c)
{
    if (o == 0) {
        v = b = c = kBot;
        return;
    }
    --o;
    const std::size_t per = with_c ? 4 : 2;
    v = static_cast<int>(o / per) + 1;
    b = static_cast<int>(o % 2);
    c = with_c ? static_cast<int>((o / 2) % 2) : kBot;
}

SimChoice choice_from_options(const std::vector<std::size_t>& opts, bool with_c)
{
    SimChoice ch;
    for (auto o : opts) {
        int v, b, c;
        decode_option(o, with_c, v, b, c);
        ch.v.push_back(v);
        ch.b.push_back(b);
        if (with_c)
            ch.c.push_back(c);
    }
    return ch;
}

bool distinct_slots(const SimChoice& ch)
{
    std::set<int> s;
    for (int v : ch.v)
        if (v != kBot && !s.insert(v).second)
            return false;
    return true;
}

}

std::vector<SimChoice> enumerate_sim_choices(std::size_t Q, std::size_t k, bool with_c)
{
    const std::size_t options = (with_c ? 4 : 2) * Q + 1;
    std::vector<SimChoice> out;
    std::vector<std::size_t> opts(k, 0);
    while (true) {
        SimChoice ch = choice_from_options(opts, with_c);
        if (distinct_slots(ch))
            out.push_back(std::move(ch));
        std::size_t j = k;
        while (j > 0) {
            --j;
            if (++opts[j] < options)
                break;
            opts[j] = 0;
            if (j == 0) {
                return out;
            }
        }
        if (k == 0)
            return out;
    }
}

std::uint64_t sim_choice_count(std::size_t Q, std::size_t k, bool with_c)
{
    const std::uint64_t w = with_c ? 4 : 2;
    std::uint64_t total = 0;
    for (std::size_t m = 0; m <= std::min(k, Q); ++m) {
        std::uint64_t t = static_cast<std::uint64_t>(binomial(static_cast<unsigned>(k), static_cast<unsigned>(m)));
        for (std::size_t i = 0; i < m; ++i)
            t *= (Q - i) * w;
        total += t;
    }
    return total;
}

SimChoice sample_sim_choice(std::size_t Q, std::size_t k, bool with_c, Rng& rng)
{
    const std::size_t options = (with_c ? 4 : 2) * Q + 1;
    std::vector<std::size_t> opts(k);
    while (true) {
        for (auto& o : opts)
            o = uniform_below(rng, options);
        SimChoice ch = choice_from_options(opts, with_c);
        if (distinct_slots(ch))
            return ch;
    }
}

nlohmann::json to_json(const SimChoice& c)
{
    auto arr = [](const std::vector<int>& xs) {
        nlohmann::json a = nlohmann::json::array();
        for (int x : xs)
            a.push_back(x == kBot ? nlohmann::json(nullptr) : nlohmann::json(x));
        return a;
    };
    nlohmann::json j{{"v", arr(c.v)}, {"b", arr(c.b)}};
    if (c.has_c())
        j["c"] = arr(c.c);
    return j;
}

// ---- tables ----

namespace {

std::vector<Elem> values_of(const std::vector<Point>& xs)
{
    std::vector<Elem> v;
    for (auto p : xs) {
        require_key0(p);
        v.push_back(p.value);
    }
    return v;
}

std::vector<Key> keys_of(const std::vector<Point>& xs)
{
    std::vector<Key> k;
    for (auto p : xs)
        k.push_back(p.key);
    return k;
}

std::vector<Elem> raw_values(const std::vector<Point>& xs)
{
    std::vector<Elem> v;
    for (auto p : xs)
        v.push_back(p.value);
    return v;
}

}

bool table_in_G(const Permutation& pi, const Permutation& pi_star, const std::vector<Point>& xs)
{
    return in_G(pi, pi_star, values_of(xs));
}

bool table_in_G(const Cipher& e, const Cipher& e_star, const std::vector<Point>& xs)
{
    return cipher_in_G(e, e_star, keys_of(xs), raw_values(xs));
}

std::vector<CipherHitMiss> table_hit_miss(const Permutation& pi, const Permutation& pi_star, const std::vector<Point>& xs)
{
    std::vector<CipherHitMiss> out;
    for (const auto& h : hit_miss(pi, pi_star, values_of(xs)))
        out.push_back({0, h.x_hit, h.x_miss, h.y_hit, h.y_miss});
    return out;
}

std::vector<CipherHitMiss> table_hit_miss(const Cipher& e, const Cipher& e_star, const std::vector<Point>& xs)
{
    return cipher_hit_miss(e, e_star, keys_of(xs), raw_values(xs));
}

template <class T>
T table_reprogram_targets(const T& t, const T& t_star, const std::vector<Point>& xs, const std::vector<std::size_t>& which)
{
    T cur = t;
    for (auto j : which) {
        const Point p = xs.at(j);
        cur = table_reprogram(cur, Triple{p.key, p.value, table_fwd(t_star, p)});
    }
    return cur;
}

template Permutation table_reprogram_targets(const Permutation&, const Permutation&, const std::vector<Point>&,
                                             const std::vector<std::size_t>&);
template Cipher table_reprogram_targets(const Cipher&, const Cipher&, const std::vector<Point>&,
                                        const std::vector<std::size_t>&);

// ---- quantum adversaries ----

std::vector<std::size_t> QuantumAdversary::measured_regs() const
{
    std::vector<std::size_t> regs;
    for (const auto& o : outputs) {
        if (o.key)
            regs.push_back(*o.key);
        regs.push_back(o.value);
    }
    regs.insert(regs.end(), z_regs.begin(), z_regs.end());
    return regs;
}

Outcome QuantumAdversary::decode(const Values& m) const
{
    Outcome out;
    std::size_t i = 0;
    for (const auto& o : outputs) {
        Point p;
        if (o.key)
            p.key = m.at(i++);
        p.value = m.at(i++);
        out.xs.push_back(p);
    }
    for (auto r : z_regs)
        out.z = out.z * circuit.layout.reg(r).dim + m.at(i++);
    return out;
}

Distribution output_distribution(const QuantumAdversary& a, const StateVector& s)
{
    Distribution d;
    for (const auto& [vals, p] : measure_distribution(s, a.measured_regs()))
        d[a.decode(vals)] += p;
    return d;
}

template <class T>
Distribution run_quantum(const QuantumAdversary& a, const T& t)
{
    return output_distribution(a, run_circuit(a.circuit, t));
}

template Distribution run_quantum(const QuantumAdversary&, const Permutation&);
template Distribution run_quantum(const QuantumAdversary&, const Cipher&);

// ---- traces ----

nlohmann::json to_json(const TraceEvent& e)
{
    auto point = [](const std::optional<Point>& p) -> nlohmann::json {
        if (!p)
            return nullptr;
        return {{"key", p->key}, {"value", p->value}};
    };
    nlohmann::json j{{"index", e.slot}, {"direction", to_string(e.dir)}, {"query", point(e.query)},
                     {"measured", point(e.measured)}};
    j["answer"] = e.answer ? nlohmann::json(*e.answer) : nlohmann::json(nullptr);
    if (e.pair)
        j["reprogram"] = {{"key", e.pair->key}, {"x", e.pair->x}, {"y", e.pair->y}};
    else
        j["reprogram"] = nullptr;
    j["when"] = e.when.empty() ? nlohmann::json(nullptr) : nlohmann::json(e.when);
    return j;
}

std::string trace_to_jsonl(const Trace& t)
{
    std::ostringstream os;
    for (const auto& e : t)
        os << to_json(e).dump() << "\n";
    return os.str();
}

// ---- simulators ----

template <class T>
Triple reprogram_target(const T& pi, ClassicalOracle& ext, Direction dir, Point q, int b)
{
    if (b == 0) {
        if (dir == Direction::forward)
            return {q.key, q.value, ext.query({Direction::forward, q})};
        return {q.key, ext.query({Direction::backward, q}), q.value};
    }
    if (dir == Direction::forward) {
        const Elem y = table_fwd(pi, q);
        return {q.key, ext.query({Direction::backward, {q.key, y}}), y};
    }
    const Elem x = table_bwd(pi, q);
    return {q.key, x, ext.query({Direction::forward, {q.key, x}})};
}

template Triple reprogram_target(const Permutation&, ClassicalOracle&, Direction, Point, int);
template Triple reprogram_target(const Cipher&, ClassicalOracle&, Direction, Point, int);

namespace {

template <class T>
class ClassicalSimOracle : public ClassicalOracle {
public:
    ClassicalSimOracle(const T& pi, ClassicalOracle& ext, const SimChoice& ch, std::size_t budget, Trace* trace)
        : pi_(pi), ext_(ext), ch_(ch), budget_(budget), trace_(trace), o_(pi)
    {
    }

    Elem query(const ClassicalQuery& q) override
    {
        const std::size_t i = ++slot_;
        if (i > budget_)
            throw ProtocolError("adversary exceeded its query budget");
        TraceEvent ev;
        ev.slot = i;
        ev.dir = q.dir;
        ev.query = q.point;
        const int j = ch_.fired_at(i);
        if (j >= 0) {
            const Triple t = reprogram_target(pi_, ext_, q.dir, q.point, ch_.b[j]);
            o_.reprogram(t);
            ev.pair = t;
            ev.when = "before";
        }
        const Elem a = q.dir == Direction::forward ? table_fwd(o_.current(), q.point) : table_bwd(o_.current(), q.point);
        ev.answer = a;
        if (trace_)
            trace_->push_back(ev);
        return a;
    }

private:
    const T& pi_;
    ClassicalOracle& ext_;
    const SimChoice& ch_;
    std::size_t budget_;
    Trace* trace_;
    StatefulOracle<T> o_;
    std::size_t slot_ = 0;
};

}

template <class T>
Outcome run_classical_sim(const ClassicalAdversary& a, const T& pi, ClassicalOracle& ext, const SimChoice& choice,
                          std::uint64_t coins, Trace* trace)
{
    if (choice.has_c() || !choice.valid(a.budget()))
        throw PreconditionError("choice does not fit the adversary's query budget");
    ClassicalSimOracle<T> o(pi, ext, choice, a.budget(), trace);
    return a.run(o, coins);
}

template Outcome run_classical_sim(const ClassicalAdversary&, const Permutation&, ClassicalOracle&, const SimChoice&,
                                   std::uint64_t, Trace*);
template Outcome run_classical_sim(const ClassicalAdversary&, const Cipher&, ClassicalOracle&, const SimChoice&,
                                   std::uint64_t, Trace*);

namespace {

std::vector<std::size_t> query_regs(const Circuit& c)
{
    std::vector<std::size_t> r;
    if (c.wiring.key)
        r.push_back(*c.wiring.key);
    r.push_back(c.wiring.query);
    return r;
}

Point point_of(const Circuit& c, const Values& v) { return c.wiring.key ? Point{v[0], v[1]} : Point{0, v[0]}; }

template <class T>
void check_quantum_inputs(const QuantumAdversary& a, const T& pi, const SimChoice& choice)
{
    if (!a.circuit.is_normal_form())
        throw PreconditionError("simulators take normal-form circuits");
    if (!choice.has_c() || !choice.valid(a.slot_count()))
        throw PreconditionError("choice does not fit the circuit's slots");
    check_wiring(a.circuit.layout, a.circuit.wiring, table_size(pi), table_keys(pi));
}

template <class T>
struct ExactRun {
    const QuantumAdversary& a;
    const T& pi;
    ClassicalOracle& ext;
    const SimChoice& ch;
    Distribution out;

    // s is the state right before slot i's oracle (U_i already applied).
    void step(std::size_t i, const StateVector& s, const T& o, double)
    {
        const Circuit& c = a.circuit;
        if (i > c.slot_count()) {
            for (const auto& [k, p] : output_distribution(a, s))
                out[k] += p;
            return;
        }
        const Direction d = c.direction(i);
        const int j = ch.fired_at(i);
        if (j < 0) {
            step(i + 1, apply_unitary(apply_oracle(s, c.wiring, o, d), c.unitaries[i]), o, 0);
            return;
        }
        const auto regs = query_regs(c);
        for (const auto& [vals, p] : measure_distribution(s, regs)) {
            if (p < 1e-18)
                continue;
            const StateVector collapsed = apply_projector(s, Projector{regs, {vals}});
            const Triple t = reprogram_target(pi, ext, d, point_of(c, vals), ch.b[j]);
            const T o2 = table_reprogram(o, t);
            const StateVector answered = apply_oracle(collapsed, c.wiring, ch.c[j] == 0 ? o2 : o, d);
            step(i + 1, apply_unitary(answered, c.unitaries[i]), o2, 0);
        }
    }
};

}

template <class T>
Distribution run_quantum_sim_exact(const QuantumAdversary& a, const T& pi, ClassicalOracle& ext, const SimChoice& choice)
{
    check_quantum_inputs(a, pi, choice);
    ExactRun<T> run{a, pi, ext, choice, {}};
    run.step(1, apply_unitary(StateVector::basis(a.circuit.layout), a.circuit.unitaries[0]), pi, 0);
    return run.out;
}

template Distribution run_quantum_sim_exact(const QuantumAdversary&, const Permutation&, ClassicalOracle&, const SimChoice&);
template Distribution run_quantum_sim_exact(const QuantumAdversary&, const Cipher&, ClassicalOracle&, const SimChoice&);

namespace {

template <class K>
const K& draw(const std::map<K, double>& dist, Rng& rng)
{
    double total = 0;
    for (const auto& [k, p] : dist)
        total += p;
    double u = uniform01(rng) * total;
    const K* last = nullptr;
    for (const auto& [k, p] : dist) {
        last = &k;
        if (u < p)
            return k;
        u -= p;
    }
    return *last;
}

}

template <class T>
Outcome run_quantum_sim_sample(const QuantumAdversary& a, const T& pi, ClassicalOracle& ext, const SimChoice& choice,
                               Rng& rng, Trace* trace)
{
    check_quantum_inputs(a, pi, choice);
    const Circuit& c = a.circuit;
    StatefulOracle<T> o(pi);
    StateVector s = apply_unitary(StateVector::basis(c.layout), c.unitaries[0]);
    const auto regs = query_regs(c);
    for (std::size_t i = 1; i <= c.slot_count(); ++i) {
        const Direction d = c.direction(i);
        TraceEvent ev;
        ev.slot = i;
        ev.dir = d;
        const int j = choice.fired_at(i);
        if (j < 0) {
            s = apply_oracle(s, c.wiring, o.current(), d);
        } else {
            const Values vals = draw(measure_distribution(s, regs), rng);
            StateVector collapsed = apply_projector(s, Projector{regs, {vals}});
            collapsed = StateVector(c.layout, collapsed.amps() / std::sqrt(collapsed.norm2()));
            const Point m = point_of(c, vals);
            const Triple t = reprogram_target(pi, ext, d, m, choice.b[j]);
            ev.measured = m;
            ev.pair = t;
            if (choice.c[j] == 0) {
                o.reprogram(t);
                s = apply_oracle(collapsed, c.wiring, o.current(), d);
                ev.when = "before";
            } else {
                s = apply_oracle(collapsed, c.wiring, o.current(), d);
                o.reprogram(t);
                ev.when = "after";
            }
        }
        s = apply_unitary(s, c.unitaries[i]);
        if (trace)
            trace->push_back(ev);
    }
    return draw(output_distribution(a, s), rng);
}

template Outcome run_quantum_sim_sample(const QuantumAdversary&, const Permutation&, ClassicalOracle&, const SimChoice&,
                                        Rng&, Trace*);
template Outcome run_quantum_sim_sample(const QuantumAdversary&, const Cipher&, ClassicalOracle&, const SimChoice&, Rng&,
                                        Trace*);

// ---- lifted adversary ----

namespace {

template <class T>
T random_table(Key key_count, Elem n, Rng& rng);

template <>
Permutation random_table<Permutation>(Key, Elem n, Rng& rng)
{
    return random_permutation(n, rng);
}

template <>
Cipher random_table<Cipher>(Key key_count, Elem n, Rng& rng)
{
    return random_cipher(key_count, n, rng);
}

}

template <class T>
LiftedAdversary<T>::LiftedAdversary(std::shared_ptr<const ClassicalAdversary> a, std::size_t k, Key key_count, Elem n)
    : classical_(std::move(a)), k_(k), key_count_(key_count), n_(n)
{
}

template <class T>
LiftedAdversary<T>::LiftedAdversary(std::shared_ptr<const QuantumAdversary> a, std::size_t k, Key key_count, Elem n)
    : quantum_(std::move(a)), k_(k), key_count_(key_count), n_(n)
{
}

template <class T>
std::string LiftedAdversary<T>::name() const
{
    return "lifted(" + (classical_ ? classical_->name() : quantum_->name) + ")";
}

template <class T>
Outcome LiftedAdversary<T>::run(ClassicalOracle& ext, std::uint64_t coins) const
{
    Rng rng = stream(coins, {0x11f7});
    const T pi = random_table<T>(key_count_, n_, rng);
    if (classical_) {
        const SimChoice ch = sample_sim_choice(classical_->budget(), k_, false, rng);
        const std::uint64_t cc = classical_->coin_count();
        const std::uint64_t a_coins = cc == 0 ? rng() : uniform_below(rng, cc);
        return run_classical_sim(*classical_, pi, ext, ch, a_coins);
    }
    const SimChoice ch = sample_sim_choice(quantum_->slot_count(), k_, true, rng);
    return run_quantum_sim_sample(*quantum_, pi, ext, ch, rng);
}

template class LiftedAdversary<Permutation>;
template class LiftedAdversary<Cipher>;

}
