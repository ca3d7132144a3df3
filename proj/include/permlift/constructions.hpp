#pragma once

#include "permlift/games.hpp"

#include <array>

namespace permlift {

/// Strings are integers with the leftmost bit most significant; the rate block is the top r bits of the state.
class SpongeParams {
public:
    /// Throws ParameterError unless r ≥ 1, n ≥ 1, r + c ≤ 30, m ≤ 56 and n ≤ 56.
    SpongeParams(unsigned r, unsigned c, unsigned m, unsigned n);

    unsigned r() const { return r_; }
    unsigned c() const { return c_; }
    unsigned m() const { return m_; }
    unsigned n() const { return n_; }
    unsigned ell_a() const { return (m_ + 1 + r_ - 1) / r_; }
    unsigned ell_s() const { return (n_ + r_ - 1) / r_; }
    unsigned ell() const { return ell_a() + ell_s() - 1; }
    Elem state_size() const { return Elem(1) << (r_ + c_); }

private:
    unsigned r_, c_, m_, n_;
};

/// x||1||0^{ℓ_a r − m − 1} as an ℓ_a·r-bit integer.
std::uint64_t sponge_pad(const SpongeParams& p, std::uint64_t x);

/// Evaluates the sponge with any permutation callable; used with counting wrappers.
std::uint64_t sponge(const SpongeParams& p, const std::function<Elem(Elem)>& pi, std::uint64_t x);
std::uint64_t sponge(const SpongeParams& p, const Permutation& pi, std::uint64_t x);

/// E_msg(h) ⊕ h.
Elem davies_meyer(const Cipher& e, Elem h, Key msg);

enum class PgvSource { constant, h, m, hm };

struct PgvSelector {
    PgvSource key = PgvSource::m;
    PgvSource input = PgvSource::h;
    PgvSource feedforward = PgvSource::h;
    bool operator==(const PgvSelector&) const = default;
};

const char* to_string(PgvSource s);
std::string to_string(const PgvSelector& s);
/// All 64 selectors, key slowest, in the order constant, h, m, h⊕m.
std::vector<PgvSelector> all_pgv_selectors();
/// Group 1, 2 or 3 of the classic 64-scheme classification.
int pgv_group(const PgvSelector& s);

/// E_k(x) ⊕ s with k, x, s resolved against (v, h, msg, h⊕msg). Keys and blocks share the domain size.
Elem pgv(const Cipher& e, const PgvSelector& sel, Elem v, Elem h, Elem msg);

enum class PmaxKind { k1, output_only };

/// Relations range over outputs of n_out bits.
Rational p_max_bound(const Relation& r, unsigned n_out, std::size_t k, PmaxKind kind);

/// 2(8q+1)^{2kℓ}(p_max + (kℓ+k+1)²/2^c).
Rational sponge_lift_bound(const SpongeParams& p, std::uint64_t q, std::uint64_t k, const Rational& p_max);
/// (8q+1)^{2ℓ}(4/2^n + 2(ℓ+2)²/2^c).
Rational preimage_bound(const SpongeParams& p, std::uint64_t q);
/// (8q+1)^{4ℓ}(12/2^{min(m,n)} + 2(2ℓ+3)²/2^c).
Rational oneway_bound(const SpongeParams& p, std::uint64_t q);
/// (8q+1)^{4ℓ}(12/2^n + 2(2ℓ+3)²/2^c).
Rational collision_bound(const SpongeParams& p, std::uint64_t q);
/// 2(8q+1)^{2kℓ}(C(2k,k)/2^{(k−1)n} + (kℓ+k+1)²/2^c).
Rational multi_collision_bound(const SpongeParams& p, std::uint64_t q, std::uint64_t k);
/// 6(8q+1)⁴/(2^n − 4); ParameterError when 2^n ≤ 4.
Rational icm_collision_bound(unsigned n, std::uint64_t q);

struct BoundRow {
    std::string game;
    std::uint64_t n = 0;
    std::optional<std::array<unsigned, 3>> rcm;
    std::optional<std::uint64_t> r_max;
    std::uint64_t q = 0;
    std::uint64_t k = 1;
    Rational raw;
};

/// The fixed parameter grid behind the bound-table subcommand.
std::vector<BoundRow> bound_table();
/// Columns: game,n,r,c,m,r_max,q,k,raw_bound,clamped.
std::string bound_table_csv(const std::vector<BoundRow>& rows);

}
