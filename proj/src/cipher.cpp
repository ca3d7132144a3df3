#include "permlift/cipher.hpp"
#include "permlift/errors.hpp"

#include <fstream>

namespace permlift {

Cipher::Cipher(Elem n, std::vector<Permutation> perms) : n_(n), perms_(std::move(perms))
{
    if (perms_.empty())
        throw DomainError("cipher needs at least one key");
    for (const auto& p : perms_)
        if (p.size() != n_)
            throw DomainError("cipher component has wrong block size");
}

Cipher Cipher::identity(Key key_count, Elem n)
{
    return Cipher(n, std::vector<Permutation>(key_count, Permutation::identity(n)));
}

const Permutation& Cipher::perm(Key k) const
{
    if (k >= key_count())
        throw DomainError("key " + std::to_string(k) + " out of range");
    return perms_[k];
}

Cipher cipher_reprogram(const Cipher& e, const Triple& t)
{
    Permutation updated = reprogram(e.perm(t.key), t.x, t.y);
    std::vector<Permutation> ps = e.perms();
    ps[t.key] = std::move(updated);
    return Cipher(e.size(), std::move(ps));
}

Cipher cipher_reprogram_seq(const Cipher& e, const std::vector<Triple>& ts)
{
    Cipher cur = e;
    for (const auto& t : ts)
        cur = cipher_reprogram(cur, t);
    return cur;
}

bool cipher_is_good(const Cipher& e, const std::vector<Triple>& ts)
{
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
            if (ts[i].key == ts[j].key && (ts[i].x == ts[j].x || ts[i].y == ts[j].y))
                return false;
    for (const auto& a : ts)
        for (const auto& b : ts)
            if (e.perm(a.key).at(a.x) == b.y)
                return false;
    return true;
}

std::vector<Triple> cipher_target_triples(const Cipher& e_star, const std::vector<Key>& keys, const std::vector<Elem>& xs)
{
    if (keys.size() != xs.size())
        throw PreconditionError("keys and elements differ in length");
    std::vector<Triple> ts;
    for (std::size_t j = 0; j < xs.size(); ++j)
        ts.push_back({keys[j], xs[j], e_star.perm(keys[j]).at(xs[j])});
    return ts;
}

bool cipher_in_G(const Cipher& e, const Cipher& e_star, const std::vector<Key>& keys, const std::vector<Elem>& xs)
{
    if (keys.size() != xs.size())
        throw PreconditionError("keys and elements differ in length");
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (keys[i] == keys[j] && xs[i] == xs[j])
                throw PreconditionError("targets sharing a key must have distinct elements");
    return cipher_is_good(e, cipher_target_triples(e_star, keys, xs));
}

std::vector<CipherHitMiss> cipher_hit_miss(const Cipher& e, const Cipher& e_star, const std::vector<Key>& keys,
                                           const std::vector<Elem>& xs)
{
    if (!cipher_in_G(e, e_star, keys, xs))
        throw PreconditionError("cipher_hit_miss: (E, E*) is not good for these targets");
    std::vector<CipherHitMiss> out;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        Key k = keys[j];
        Elem y = e_star.enc(k, xs[j]);
        out.push_back({k, xs[j], e.dec(k, y), y, e.enc(k, xs[j])});
    }
    return out;
}

Rational cipher_bad_probability_bound(std::uint64_t k, std::uint64_t n) { return bad_probability_bound(k, n); }

Cipher random_cipher(Key key_count, Elem n, Rng& rng)
{
    std::vector<Permutation> ps;
    for (Key k = 0; k < key_count; ++k)
        ps.push_back(random_permutation(n, rng));
    return Cipher(n, std::move(ps));
}

std::vector<Cipher> all_ciphers(Key key_count, Elem n)
{
    auto perms = all_permutations(n);
    std::uint64_t total = 1;
    for (Key k = 0; k < key_count; ++k) {
        total *= perms.size();
        if (total > 10'000'000)
            throw CapabilityError("too many ciphers to enumerate");
    }
    std::vector<Cipher> out;
    out.reserve(total);
    std::vector<std::size_t> idx(key_count, 0);
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rest = c;
        for (Key k = key_count; k-- > 0;) {
            idx[k] = rest % perms.size();
            rest /= perms.size();
        }
        std::vector<Permutation> ps;
        for (auto i : idx)
            ps.push_back(perms[i]);
        out.emplace_back(n, std::move(ps));
    }
    return out;
}

nlohmann::json to_json(const Cipher& e)
{
    nlohmann::json perms = nlohmann::json::array();
    for (const auto& p : e.perms())
        perms.push_back(p.table());
    return {{"key_count", e.key_count()}, {"n", e.size()}, {"perms", perms}};
}

Cipher cipher_from_json(const nlohmann::json& j)
{
    try {
        auto kc = j.at("key_count").get<std::int64_t>();
        auto n = j.at("n").get<std::int64_t>();
        const auto& perms = j.at("perms");
        if (kc <= 0 || static_cast<std::size_t>(kc) != perms.size())
            throw ParseError("cipher json: key_count does not match perms");
        std::vector<Permutation> ps;
        for (const auto& t : perms)
            ps.push_back(permutation_from_json({{"n", n}, {"fwd", t}}));
        return Cipher(static_cast<Elem>(n), std::move(ps));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cipher json: ") + e.what());
    }
}

Cipher load_cipher(const std::string& path)
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
    return cipher_from_json(j);
}

void save_cipher(const Cipher& e, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << to_json(e).dump() << "\n";
}

}
