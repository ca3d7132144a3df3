#pragma once

#include "permlift/permutation.hpp"

namespace permlift {

using Key = std::uint32_t;

/// Keyed family of permutations, one explicit table per key.
class Cipher {
public:
    Cipher() = default;
    Cipher(Elem n, std::vector<Permutation> perms);

    static Cipher identity(Key key_count, Elem n);
    static Cipher single(const Permutation& p) { return Cipher(p.size(), {p}); }

    Key key_count() const { return static_cast<Key>(perms_.size()); }
    Elem size() const { return n_; }
    const Permutation& perm(Key k) const;
    Elem enc(Key k, Elem x) const { return perms_[k](x); }
    Elem dec(Key k, Elem y) const { return perms_[k].inv(y); }
    const std::vector<Permutation>& perms() const { return perms_; }

    bool operator==(const Cipher& o) const { return n_ == o.n_ && perms_ == o.perms_; }

private:
    Elem n_ = 0;
    std::vector<Permutation> perms_;
};

struct Triple {
    Key key = 0;
    Elem x = 0;
    Elem y = 0;
    bool operator==(const Triple&) const = default;
};

struct CipherHitMiss {
    Key key = 0;
    Elem x_hit = 0;
    Elem x_miss = 0;
    Elem y_hit = 0;
    Elem y_miss = 0;
    bool operator==(const CipherHitMiss&) const = default;
};

Cipher cipher_reprogram(const Cipher& e, const Triple& t);
Cipher cipher_reprogram_seq(const Cipher& e, const std::vector<Triple>& ts);
bool cipher_is_good(const Cipher& e, const std::vector<Triple>& ts);
/// Throws PreconditionError if two targets share both key and element.
bool cipher_in_G(const Cipher& e, const Cipher& e_star, const std::vector<Key>& keys, const std::vector<Elem>& xs);
std::vector<Triple> cipher_target_triples(const Cipher& e_star, const std::vector<Key>& keys, const std::vector<Elem>& xs);
std::vector<CipherHitMiss> cipher_hit_miss(const Cipher& e, const Cipher& e_star, const std::vector<Key>& keys,
                                           const std::vector<Elem>& xs);
Rational cipher_bad_probability_bound(std::uint64_t k, std::uint64_t n);

Cipher random_cipher(Key key_count, Elem n, Rng& rng);
/// Every cipher with the given shape; key 0 varies slowest. (n!)^key_count entries.
std::vector<Cipher> all_ciphers(Key key_count, Elem n);

nlohmann::json to_json(const Cipher& e);
Cipher cipher_from_json(const nlohmann::json& j);
Cipher load_cipher(const std::string& path);
void save_cipher(const Cipher& e, const std::string& path);

}
