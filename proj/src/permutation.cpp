#include "permlift/permutation.hpp"
#include "permlift/errors.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

namespace permlift {

Permutation::Permutation(std::vector<Elem> fwd) : fwd_(std::move(fwd)), inv_(fwd_.size(), 0)
{
    std::vector<bool> seen(fwd_.size(), false);
    for (std::size_t x = 0; x < fwd_.size(); ++x) {
        Elem y = fwd_[x];
        if (y >= fwd_.size() || seen[y])
            throw DomainError("not a bijection: entry " + std::to_string(x) + " maps to " + std::to_string(y));
        seen[y] = true;
        inv_[y] = static_cast<Elem>(x);
    }
}

Permutation Permutation::identity(Elem n)
{
    std::vector<Elem> t(n);
    std::iota(t.begin(), t.end(), Elem{0});
    return Permutation(std::move(t));
}

Elem Permutation::at(Elem x) const
{
    if (x >= size())
        throw DomainError("element " + std::to_string(x) + " outside domain of size " + std::to_string(size()));
    return fwd_[x];
}

Elem Permutation::inv_at(Elem y) const
{
    if (y >= size())
        throw DomainError("element " + std::to_string(y) + " outside domain of size " + std::to_string(size()));
    return inv_[y];
}

Permutation Permutation::inverse() const
{
    Permutation p;
    p.fwd_ = inv_;
    p.inv_ = fwd_;
    return p;
}

Permutation Permutation::compose(const Permutation& other) const
{
    if (other.size() != size())
        throw DomainError("compose: size mismatch");
    std::vector<Elem> t(size());
    for (Elem z = 0; z < size(); ++z)
        t[z] = fwd_[other.fwd_[z]];
    return Permutation(std::move(t));
}

std::uint64_t Permutation::rank() const
{
    // Lehmer code.
    const Elem n = size();
    std::uint64_t r = 0;
    for (Elem i = 0; i < n; ++i) {
        std::uint64_t smaller = 0;
        for (Elem j = i + 1; j < n; ++j)
            if (fwd_[j] < fwd_[i])
                ++smaller;
        r = r * (n - i) + smaller;
    }
    return r;
}

Permutation reprogram(const Permutation& pi, Elem x, Elem y)
{
    const Elem n = pi.size();
    if (x >= n || y >= n)
        throw DomainError("reprogram pair (" + std::to_string(x) + "," + std::to_string(y) + ") outside domain of size " +
                          std::to_string(n));
    std::vector<Elem> t = pi.table();
    Elem pre = pi.inv(y);
    t[pre] = pi(x);
    t[x] = y;
    return Permutation(std::move(t));
}

Permutation reprogram_seq(const Permutation& pi, const PairTuple& pairs)
{
    Permutation cur = pi;
    for (const auto& p : pairs)
        cur = reprogram(cur, p.x, p.y);
    return cur;
}

bool is_disjoint(const PairTuple& pairs)
{
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (pairs[i].x == pairs[j].x || pairs[i].y == pairs[j].y)
                return false;
    return true;
}

bool is_good(const Permutation& pi, const PairTuple& pairs)
{
    if (!is_disjoint(pairs))
        return false;
    for (const auto& a : pairs)
        for (const auto& b : pairs)
            if (pi.at(a.x) == b.y)
                return false;
    return true;
}

static void require_distinct(const std::vector<Elem>& xs)
{
    std::set<Elem> s(xs.begin(), xs.end());
    if (s.size() != xs.size())
        throw PreconditionError("target points must be distinct");
}

PairTuple target_pairs(const Permutation& pi_star, const std::vector<Elem>& xs)
{
    PairTuple t;
    t.reserve(xs.size());
    for (Elem x : xs)
        t.push_back({x, pi_star.at(x)});
    return t;
}

bool in_G(const Permutation& pi, const Permutation& pi_star, const std::vector<Elem>& xs)
{
    require_distinct(xs);
    return is_good(pi, target_pairs(pi_star, xs));
}

std::vector<HitMiss> hit_miss(const Permutation& pi, const Permutation& pi_star, const std::vector<Elem>& xs)
{
    if (!in_G(pi, pi_star, xs))
        throw PreconditionError("hit_miss: (pi, pi_star) is not good for these targets");
    std::vector<HitMiss> out;
    for (Elem x : xs) {
        Elem y = pi_star(x);
        out.push_back({x, pi.inv(y), y, pi(x)});
    }
    return out;
}

Rational bad_probability_bound(std::uint64_t k, std::uint64_t n)
{
    if (n == 0)
        throw ParameterError("domain size must be positive");
    return Rational(BigInt(k) * k, BigInt(n));
}

std::uint64_t factorial(unsigned n)
{
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return f;
}

void for_each_permutation(Elem n, const std::function<void(const Permutation&)>& f)
{
    std::vector<Elem> t(n);
    std::iota(t.begin(), t.end(), Elem{0});
    do {
        f(Permutation(t));
    } while (std::next_permutation(t.begin(), t.end()));
}

std::vector<Permutation> all_permutations(Elem n)
{
    if (n > 10)
        throw CapabilityError("refusing to enumerate " + std::to_string(n) + "! permutations");
    std::vector<Permutation> out;
    out.reserve(factorial(n));
    for_each_permutation(n, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

Permutation random_permutation(Elem n, Rng& rng)
{
    std::vector<Elem> t(n);
    std::iota(t.begin(), t.end(), Elem{0});
    // Fisher-Yates with our own index draws so the stream is stdlib-independent in shape.
    for (Elem i = n; i > 1; --i) {
        Elem j = static_cast<Elem>(uniform_below(rng, i));
        std::swap(t[i - 1], t[j]);
    }
    return Permutation(std::move(t));
}

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

nlohmann::json to_json(const Permutation& p) { return {{"n", p.size()}, {"fwd", p.table()}}; }

Permutation permutation_from_json(const nlohmann::json& j)
{
    try {
        auto n = j.at("n").get<std::int64_t>();
        auto fwd = j.at("fwd").get<std::vector<std::int64_t>>();
        if (n < 0 || static_cast<std::size_t>(n) != fwd.size())
            throw ParseError("permutation json: n does not match length of fwd");
        std::vector<Elem> t;
        for (auto v : fwd) {
            if (v < 0 || v >= n)
                throw DomainError("permutation json: entry out of range");
            t.push_back(static_cast<Elem>(v));
        }
        return Permutation(std::move(t));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("permutation json: ") + e.what());
    }
}

Permutation load_permutation(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return permutation_from_json(j);
}

void save_permutation(const Permutation& p, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << to_json(p).dump() << "\n";
}

}
