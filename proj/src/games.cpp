#include "permlift/games.hpp"

#include "permlift/constructions.hpp"

#include <fstream>

namespace permlift {

Relation relation_double_sided_zero(unsigned n_half)
{
    if (n_half == 0 || n_half > 15)
        throw ParameterError("half width must be in 1..15 bits");
    const Elem mask = (Elem(1) << n_half) - 1;
    return {"double-sided-zero", 1,
            [mask](const std::vector<Point>& xs, const std::vector<Elem>& ys, std::uint64_t) {
                return (xs[0].value & mask) == 0 && (ys[0] & mask) == 0;
            }};
}

Relation relation_double_sided_zero_bits(unsigned total_bits)
{
    if (total_bits % 2 != 0)
        throw ParameterError("double-sided zero search needs an even bit width");
    return relation_double_sided_zero(total_bits / 2);
}

Relation relation_fixed_point()
{
    return {"fixed-point", 1,
            [](const std::vector<Point>& xs, const std::vector<Elem>& ys, std::uint64_t) { return xs[0].value == ys[0]; }};
}

Relation relation_successor(Elem n)
{
    return {"successor", 1, [n](const std::vector<Point>& xs, const std::vector<Elem>& ys, std::uint64_t) {
                return ys[0] == (xs[0].value + 1) % n;
            }};
}

Relation relation_from_pairs(const std::string& name, const std::vector<Pair>& pairs)
{
    std::set<std::pair<Elem, Elem>> s;
    for (auto p : pairs)
        s.insert({p.x, p.y});
    return {name, 1, [s](const std::vector<Point>& xs, const std::vector<Elem>& ys, std::uint64_t) {
                return s.count({xs[0].value, ys[0]}) > 0;
            }};
}

Relation load_relation(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
        std::vector<Pair> pairs;
        for (const auto& p : j.at("pairs"))
            pairs.push_back({p.at(0).get<Elem>(), p.at(1).get<Elem>()});
        return relation_from_pairs(j.value("name", path), pairs);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Relation relation_preimage(Elem target)
{
    Relation r{"preimage", 1, [target](const std::vector<Point>&, const std::vector<Elem>& ys, std::uint64_t) {
                   return ys[0] == target;
               }};
    r.output_only = true;
    return r;
}

Relation relation_output_collision(std::size_t k)
{
    Relation r{"collision", k, [](const std::vector<Point>&, const std::vector<Elem>& ys, std::uint64_t) {
                   for (auto y : ys)
                       if (y != ys[0])
                           return false;
                   return true;
               }};
    r.output_only = true;
    return r;
}

Relation relation_empty(std::size_t k)
{
    Relation r{"empty", k, [](const std::vector<Point>&, const std::vector<Elem>&, std::uint64_t) { return false; }};
    r.output_only = true;
    return r;
}

Relation relation_full(std::size_t k)
{
    Relation r{"full", k, [](const std::vector<Point>&, const std::vector<Elem>&, std::uint64_t) { return true; }};
    r.output_only = true;
    return r;
}

std::uint64_t r_max(const Relation& r, Elem n)
{
    if (r.arity != 1)
        throw PreconditionError("r_max is defined for one-point relations");
    if (!r.enumerable)
        throw CapabilityError("relation " + r.name + " cannot be enumerated");
    std::vector<std::uint64_t> rows(n), cols(n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (r.pred({{0, x}}, {y}, 0)) {
                ++rows[x];
                ++cols[y];
            }
    std::uint64_t best = 0;
    for (Elem i = 0; i < n; ++i)
        best = std::max({best, rows[i], cols[i]});
    return best;
}

// ---- brute-force optimum ----

namespace {

struct Overflow {};

class TreeSearch {
public:
    TreeSearch(const Relation& r, Elem n, std::uint64_t budget) : r_(r), n_(n), budget_(budget), perms_(all_permutations(n))
    {
        outputs_ = 1;
        for (std::size_t i = 0; i < r.arity; ++i)
            outputs_ *= n;
    }

    std::uint64_t leaf(const std::vector<std::uint32_t>& set) const
    {
        std::uint64_t best = 0;
        std::vector<Point> xs(r_.arity);
        std::vector<Elem> ys(r_.arity);
        for (std::uint64_t o = 0; o < outputs_; ++o) {
            std::uint64_t rest = o;
            for (std::size_t i = 0; i < r_.arity; ++i) {
                xs[i] = {0, static_cast<Elem>(rest % n_)};
                rest /= n_;
            }
            std::uint64_t wins = 0;
            for (auto idx : set) {
                for (std::size_t i = 0; i < r_.arity; ++i)
                    ys[i] = perms_[idx](xs[i].value);
                wins += r_.pred(xs, ys, 0);
            }
            best = std::max(best, wins);
        }
        return best;
    }

    std::uint64_t solve(const std::vector<std::uint32_t>& set, std::size_t remaining)
    {
        if (++nodes_ > budget_)
            throw Overflow{};
        std::uint64_t best = leaf(set);
        if (remaining == 0)
            return best;
        for (int dir = 0; dir < 2; ++dir)
            for (Elem p = 0; p < n_; ++p)
                best = std::max(best, branch(set, remaining, dir, p));
        return best;
    }

    // Value of querying (dir, p) next and playing optimally afterwards; 0 when the answer is already known.
    std::uint64_t branch(const std::vector<std::uint32_t>& set, std::size_t remaining, int dir, Elem p)
    {
        std::vector<std::vector<std::uint32_t>> parts(n_);
        for (auto idx : set)
            parts[dir == 0 ? perms_[idx](p) : perms_[idx].inv(p)].push_back(idx);
        std::size_t nonempty = 0;
        for (const auto& part : parts)
            nonempty += !part.empty();
        if (nonempty <= 1)
            return 0;
        std::uint64_t total = 0;
        for (const auto& part : parts)
            if (!part.empty())
                total += solve(part, remaining - 1);
        return total;
    }

    std::uint64_t nodes() const { return nodes_; }
    std::size_t size() const { return perms_.size(); }

private:
    const Relation& r_;
    Elem n_;
    std::uint64_t budget_;
    std::vector<Permutation> perms_;
    std::uint64_t outputs_;
    std::uint64_t nodes_ = 0;
};

}

BestClassical best_k_classical(const Relation& r, Elem n, std::size_t k, std::uint64_t node_budget)
{
    if (n == 0 || n > 8)
        throw CapabilityError("best_k_classical enumerates permutations only up to n = 8");
    if (!r.enumerable)
        throw CapabilityError("relation " + r.name + " cannot be enumerated");
    TreeSearch t(r, n, node_budget);
    std::vector<std::uint32_t> all(t.size());
    for (std::uint32_t i = 0; i < all.size(); ++i)
        all[i] = i;
    const Rational denom = static_cast<std::uint64_t>(all.size());
    std::uint64_t best = 0;
    try {
        best = t.leaf(all);
        if (k > 0)
            for (int dir = 0; dir < 2; ++dir)
                for (Elem p = 0; p < n; ++p)
                    best = std::max(best, t.branch(all, k, dir, p));
    } catch (const Overflow&) {
        throw BudgetExceeded("search exceeded " + std::to_string(node_budget) + " nodes", Rational(best) / denom);
    }
    return {Rational(best) / denom, t.nodes()};
}

// ---- bounds ----

Rational generalized_double_sided_bound(std::uint64_t q, std::uint64_t rm, const BigInt& N)
{
    if (N < 2)
        throw ParameterError("domain size must be at least 2");
    return Rational(8 * ipow(8 * q + 1, 2) * rm, N);
}

namespace {

SpongeParams sponge_params(const GameParams& p)
{
    return SpongeParams(static_cast<unsigned>(p.r), static_cast<unsigned>(p.c), static_cast<unsigned>(p.m),
                        static_cast<unsigned>(p.n));
}

}

BoundReport game_bound(const std::string& id, const GameParams& p)
{
    BoundReport rep;
    rep.game = id;
    rep.params = p;
    if (id == "double-sided-zero") {
        if (p.n == 0 || p.n > 4096)
            throw ParameterError("half width out of range");
        rep.raw = generalized_double_sided_bound(p.q, 1, pow2(static_cast<unsigned>(p.n)));
    } else if (id == "fixed-point") {
        rep.raw = generalized_double_sided_bound(p.q, 1, p.n);
    } else if (id == "generalized") {
        if (!p.r_max)
            throw ParameterError("generalized game needs r_max");
        rep.raw = generalized_double_sided_bound(p.q, *p.r_max, p.n);
    } else if (id.rfind("generalized:", 0) == 0) {
        const Relation r = load_relation(id.substr(12));
        if (p.n == 0 || p.n > (1u << 16))
            throw ParameterError("domain size out of range");
        rep.params.r_max = r_max(r, static_cast<Elem>(p.n));
        rep.raw = generalized_double_sided_bound(p.q, *rep.params.r_max, p.n);
    } else if (id == "icm-collision") {
        rep.raw = icm_collision_bound(static_cast<unsigned>(p.n), p.q);
    } else if (id == "sponge-preimage") {
        rep.raw = sponge_lift_bound(sponge_params(p), p.q, 1, Rational(2, pow2(static_cast<unsigned>(p.n))));
    } else if (id == "sponge-onewayness") {
        rep.raw = oneway_bound(sponge_params(p), p.q);
    } else if (id == "sponge-collision") {
        rep.raw = sponge_lift_bound(sponge_params(p), p.q, 2, Rational(6, pow2(static_cast<unsigned>(p.n))));
    } else if (id == "sponge-multicollision") {
        rep.raw = multi_collision_bound(sponge_params(p), p.q, p.k);
    } else {
        throw ParameterError("unknown game '" + id + "'");
    }
    rep.clamped = clamp01(rep.raw);
    return rep;
}

std::vector<std::string> game_ids()
{
    return {"double-sided-zero", "fixed-point",       "generalized",     "generalized:<file>",   "icm-collision",
            "sponge-preimage",   "sponge-onewayness", "sponge-collision", "sponge-multicollision"};
}

nlohmann::json to_json(const BoundReport& r)
{
    nlohmann::json j{{"game", r.game},
                     {"n", r.params.n},
                     {"q", r.params.q},
                     {"k", r.params.k},
                     {"raw_bound", to_string(r.raw)},
                     {"raw_bound_float", to_double(r.raw)},
                     {"clamped", to_string(r.clamped)}};
    if (r.params.r_max)
        j["r_max"] = *r.params.r_max;
    if (r.measured)
        j["measured"] = *r.measured;
    if (!r.verdict.empty())
        j["verdict"] = r.verdict;
    return j;
}

// ---- interactive ----

namespace {

class RecordingOracle : public ClassicalOracle {
public:
    RecordingOracle(ClassicalOracle& inner, View& view) : inner_(inner), view_(view) {}
    Elem query(const ClassicalQuery& q) override
    {
        const Elem a = inner_.query(q);
        if (q.dir == Direction::forward) {
            view_.xs.push_back(q.point);
            view_.ys.push_back(a);
        } else {
            view_.xs.push_back({q.point.key, a});
            view_.ys.push_back(q.point.value);
        }
        return a;
    }

private:
    ClassicalOracle& inner_;
    View& view_;
};

struct Reject {};

class ReplayOracle : public ClassicalOracle {
public:
    explicit ReplayOracle(const View& v) : v_(v) {}
    Elem query(const ClassicalQuery& q) override
    {
        if (i_ >= v_.xs.size() || i_ >= v_.ys.size())
            throw Reject{};
        const Point x = v_.xs[i_];
        const Elem y = v_.ys[i_];
        ++i_;
        // a view is only consistent if it could come from one permutation per key
        auto [fi, fnew] = fwd_.insert({x, y});
        auto [bi, bnew] = bwd_.insert({Point{x.key, y}, x.value});
        if (fi->second != y || bi->second != x.value)
            throw Reject{};
        if (q.dir == Direction::forward) {
            if (q.point != x)
                throw Reject{};
            return y;
        }
        if (q.point != Point{x.key, y})
            throw Reject{};
        return x.value;
    }
    bool consumed() const { return i_ == v_.xs.size() && v_.xs.size() == v_.ys.size(); }

private:
    const View& v_;
    std::size_t i_ = 0;
    std::map<Point, Elem> fwd_;
    std::map<Point, Elem> bwd_;
};

}

bool run_challenger(const Challenger& c, ClassicalOracle& oracle, std::uint64_t rnd, const Challenger::Reply& adversary,
                    View& view)
{
    view = View{};
    RecordingOracle rec(oracle, view);
    return c.play(rec, rnd, [&](const Message& m) {
        Outcome o = adversary(m);
        view.transcript.push_back({m, o});
        return o;
    });
}

bool ver_view(const Challenger& c, std::uint64_t rnd, const View& view)
{
    ReplayOracle o(view);
    std::size_t round = 0;
    try {
        const bool verdict = c.play(o, rnd, [&](const Message& m) {
            if (round >= view.transcript.size() || view.transcript[round].sent != m)
                throw Reject{};
            return view.transcript[round++].reply;
        });
        if (!o.consumed() || round != view.transcript.size())
            return false;
        return verdict;
    } catch (const Reject&) {
        return false;
    }
}

namespace {

class RelationChallenger : public Challenger {
public:
    explicit RelationChallenger(Relation r) : r_(std::move(r)) {}
    std::string name() const override { return "relation(" + r_.name + ")"; }
    std::size_t budget() const override { return r_.arity; }
    bool play(ClassicalOracle& o, std::uint64_t, const Reply& adversary) const override
    {
        const Outcome reply = adversary({});
        if (reply.xs.size() != r_.arity)
            return false;
        std::vector<Elem> ys;
        for (auto p : reply.xs)
            ys.push_back(o.query({Direction::forward, p}));
        return r_.holds(reply, ys);
    }

private:
    Relation r_;
};

class OneWayChallenger : public Challenger {
public:
    explicit OneWayChallenger(Elem n) : n_(n) {}
    std::string name() const override { return "one-way"; }
    std::size_t budget() const override { return 1; }
    std::uint64_t rnd_count() const override { return n_; }
    bool play(ClassicalOracle& o, std::uint64_t rnd, const Reply& adversary) const override
    {
        const Elem x = static_cast<Elem>(rnd % n_);
        const Elem y = o.query({Direction::forward, {0, x}});
        const Outcome reply = adversary({y});
        return !reply.xs.empty() && reply.xs[0] == Point{0, x};
    }

private:
    Elem n_;
};

class ZeroMessageChallenger : public Challenger {
public:
    std::string name() const override { return "zero-message"; }
    std::size_t budget() const override { return 0; }
    bool play(ClassicalOracle&, std::uint64_t, const Reply&) const override { return true; }
};

class RepeatQueryChallenger : public Challenger {
public:
    explicit RepeatQueryChallenger(Elem x) : x_(x) {}
    std::string name() const override { return "repeat-query"; }
    std::size_t budget() const override { return 2; }
    bool play(ClassicalOracle& o, std::uint64_t, const Reply& adversary) const override
    {
        o.query({Direction::forward, {0, x_}});
        o.query({Direction::forward, {0, x_}});
        adversary({});
        return true;
    }

private:
    Elem x_;
};

}

std::shared_ptr<Challenger> relation_challenger(Relation r) { return std::make_shared<RelationChallenger>(std::move(r)); }
std::shared_ptr<Challenger> oneway_challenger(Elem n) { return std::make_shared<OneWayChallenger>(n); }
std::shared_ptr<Challenger> zero_message_challenger() { return std::make_shared<ZeroMessageChallenger>(); }
std::shared_ptr<Challenger> repeat_query_challenger(Elem x) { return std::make_shared<RepeatQueryChallenger>(x); }

}
