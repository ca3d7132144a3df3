#include "permlift/constructions.hpp"

#include <sstream>

namespace permlift {

SpongeParams::SpongeParams(unsigned r, unsigned c, unsigned m, unsigned n) : r_(r), c_(c), m_(m), n_(n)
{
    if (r < 1 || n < 1)
        throw ParameterError("sponge needs r ≥ 1 and n ≥ 1");
    if (r + c > 30)
        throw ParameterError("sponge state wider than 30 bits");
    if (m > 56 || n > 56)
        throw ParameterError("sponge input and output are limited to 56 bits");
    if (ell_a() * r > 63 || ell_s() * r > 63)
        throw ParameterError("sponge blocks do not fit in 63 bits");
}

std::uint64_t sponge_pad(const SpongeParams& p, std::uint64_t x)
{
    if (p.m() < 64 && (x >> p.m()) != 0)
        throw DomainError("sponge input wider than m bits");
    const unsigned width = p.ell_a() * p.r();
    return (x << (width - p.m())) | (std::uint64_t(1) << (width - p.m() - 1));
}

std::uint64_t sponge(const SpongeParams& p, const std::function<Elem(Elem)>& pi, std::uint64_t x)
{
    const std::uint64_t padded = sponge_pad(p, x);
    const std::uint64_t rate_mask = (std::uint64_t(1) << p.r()) - 1;
    const unsigned la = p.ell_a(), ls = p.ell_s();
    Elem s = 0;
    for (unsigned i = 0; i < la; ++i) {
        const std::uint64_t block = (padded >> (p.r() * (la - 1 - i))) & rate_mask;
        s = pi(static_cast<Elem>(s ^ (block << p.c())));
    }
    std::uint64_t out = 0;
    for (unsigned i = 0; i < ls; ++i) {
        out = (out << p.r()) | (s >> p.c());
        if (i + 1 < ls)
            s = pi(s);
    }
    return out >> (ls * p.r() - p.n());
}

std::uint64_t sponge(const SpongeParams& p, const Permutation& pi, std::uint64_t x)
{
    if (pi.size() != p.state_size())
        throw DomainError("permutation size differs from 2^(r+c)");
    return sponge(p, [&](Elem s) { return pi(s); }, x);
}

Elem davies_meyer(const Cipher& e, Elem h, Key msg)
{
    if (!is_power_of_two(e.size()))
        throw DomainError("XOR feed-forward needs a power-of-two block domain");
    if (h >= e.size())
        throw DomainError("chaining value out of range");
    return e.perm(msg)(h) ^ h;
}

const char* to_string(PgvSource s)
{
    switch (s) {
    case PgvSource::constant:
        return "v";
    case PgvSource::h:
        return "h";
    case PgvSource::m:
        return "m";
    case PgvSource::hm:
        return "h^m";
    }
    return "?";
}

std::string to_string(const PgvSelector& s)
{
    return std::string("E_") + to_string(s.key) + "(" + to_string(s.input) + ")^" + to_string(s.feedforward);
}

std::vector<PgvSelector> all_pgv_selectors()
{
    std::vector<PgvSelector> out;
    for (int k = 0; k < 4; ++k)
        for (int x = 0; x < 4; ++x)
            for (int f = 0; f < 4; ++f)
                out.push_back({PgvSource(k), PgvSource(x), PgvSource(f)});
    return out;
}

int pgv_group(const PgvSelector& s)
{
    // Transcribed from the Black-Rogaway-Shrimpton classification; w = h⊕m, v = constant.
    using S = PgvSource;
    static const PgvSelector group1[] = {
        {S::h, S::m, S::m},   {S::h, S::hm, S::hm}, {S::h, S::m, S::hm},  {S::h, S::hm, S::m},
        {S::m, S::h, S::h},   {S::m, S::hm, S::hm}, {S::m, S::h, S::hm},  {S::m, S::hm, S::h},
        {S::hm, S::h, S::h},  {S::hm, S::m, S::m},  {S::hm, S::h, S::m},  {S::hm, S::m, S::h},
    };
    static const PgvSelector group2[] = {
        {S::m, S::h, S::constant},  {S::m, S::hm, S::constant}, {S::m, S::h, S::m},   {S::m, S::hm, S::m},
        {S::hm, S::h, S::constant}, {S::hm, S::m, S::constant}, {S::hm, S::h, S::hm}, {S::hm, S::m, S::hm},
    };
    for (const auto& g : group1)
        if (g == s)
            return 1;
    for (const auto& g : group2)
        if (g == s)
            return 2;
    return 3;
}

Elem pgv(const Cipher& e, const PgvSelector& sel, Elem v, Elem h, Elem msg)
{
    const Elem n = e.size();
    if (e.key_count() != n)
        throw PreconditionError("PGV needs key space and block space of equal size");
    if (!is_power_of_two(n))
        throw DomainError("PGV needs a power-of-two block domain");
    if (v >= n || h >= n || msg >= n)
        throw DomainError("PGV argument out of range");
    auto pick = [&](PgvSource s) -> Elem {
        switch (s) {
        case PgvSource::constant:
            return v;
        case PgvSource::h:
            return h;
        case PgvSource::m:
            return msg;
        case PgvSource::hm:
            return h ^ msg;
        }
        return 0;
    };
    return e.enc(pick(sel.key), pick(sel.input)) ^ pick(sel.feedforward);
}

Rational p_max_bound(const Relation& r, unsigned n_out, std::size_t k, PmaxKind kind)
{
    if (n_out > 20)
        throw CapabilityError("p_max enumeration is limited to 20 output bits");
    const std::uint64_t N = std::uint64_t(1) << n_out;
    if (r.arity != k)
        throw PreconditionError("relation arity differs from k");
    if (kind == PmaxKind::k1) {
        if (k != 1)
            throw PreconditionError("the one-query bound needs k = 1");
        std::uint64_t best = 0;
        for (std::uint64_t x = 0; x < N; ++x) {
            std::uint64_t cnt = 0;
            for (std::uint64_t y = 0; y < N; ++y)
                cnt += r.pred({{0, static_cast<Elem>(x)}}, {static_cast<Elem>(y)}, 0);
            best = std::max(best, cnt);
        }
        return Rational(2 * best, N);
    }
    if (!r.output_only)
        throw PreconditionError("the output-only bound needs a relation that ignores its inputs");
    BigInt total = 1;
    for (std::size_t i = 0; i < k; ++i)
        total *= N;
    if (total > BigInt(1) << 24)
        throw CapabilityError("p_max enumeration exceeds 2^24 output tuples");
    std::vector<Point> xs;
    for (std::size_t i = 0; i < k; ++i)
        xs.push_back({0, static_cast<Elem>(i)});
    const auto count = static_cast<std::uint64_t>(total);
    std::uint64_t hits = 0;
    std::vector<Elem> ys(k);
    for (std::uint64_t t = 0; t < count; ++t) {
        std::uint64_t rest = t;
        for (std::size_t i = 0; i < k; ++i) {
            ys[i] = static_cast<Elem>(rest % N);
            rest /= N;
        }
        std::vector<Elem> perm = ys;
        std::sort(perm.begin(), perm.end());
        bool any = false;
        do {
            any = r.pred(xs, perm, 0);
        } while (!any && std::next_permutation(perm.begin(), perm.end()));
        hits += any;
    }
    return Rational(binomial(static_cast<unsigned>(2 * k), static_cast<unsigned>(k)) * hits, total);
}

namespace {

BigInt q_factor(std::uint64_t q, std::uint64_t exp) { return ipow(BigInt(8 * q + 1), static_cast<unsigned>(exp)); }

}

Rational sponge_lift_bound(const SpongeParams& p, std::uint64_t q, std::uint64_t k, const Rational& p_max)
{
    const std::uint64_t l = p.ell();
    const BigInt t = k * l + k + 1;
    return 2 * Rational(q_factor(q, 2 * k * l)) * (p_max + Rational(t * t, pow2(p.c())));
}

Rational preimage_bound(const SpongeParams& p, std::uint64_t q)
{
    const std::uint64_t l = p.ell();
    return Rational(q_factor(q, 2 * l)) *
           (Rational(4, pow2(p.n())) + Rational(2 * ipow(BigInt(l + 2), 2), pow2(p.c())));
}

Rational oneway_bound(const SpongeParams& p, std::uint64_t q)
{
    const std::uint64_t l = p.ell();
    return Rational(q_factor(q, 4 * l)) *
           (Rational(12, pow2(std::min(p.m(), p.n()))) + Rational(2 * ipow(BigInt(2 * l + 3), 2), pow2(p.c())));
}

Rational collision_bound(const SpongeParams& p, std::uint64_t q)
{
    const std::uint64_t l = p.ell();
    return Rational(q_factor(q, 4 * l)) *
           (Rational(12, pow2(p.n())) + Rational(2 * ipow(BigInt(2 * l + 3), 2), pow2(p.c())));
}

Rational multi_collision_bound(const SpongeParams& p, std::uint64_t q, std::uint64_t k)
{
    if (k < 1)
        throw ParameterError("multi-collision needs k ≥ 1");
    const std::uint64_t l = p.ell();
    const BigInt t = k * l + k + 1;
    return 2 * Rational(q_factor(q, 2 * k * l)) *
           (Rational(binomial(static_cast<unsigned>(2 * k), static_cast<unsigned>(k)),
                     pow2(static_cast<unsigned>((k - 1) * p.n()))) +
            Rational(t * t, pow2(p.c())));
}

Rational icm_collision_bound(unsigned n, std::uint64_t q)
{
    if (n <= 2)
        throw ParameterError("ICM collision bound needs 2^n > 4");
    return Rational(6 * q_factor(q, 4), pow2(n) - 4);
}

std::vector<BoundRow> bound_table()
{
    std::vector<BoundRow> rows;
    for (std::uint64_t n : {2, 4, 10, 16, 32})
        for (std::uint64_t q : {0, 1, 2, 4})
            rows.push_back({"double-sided-zero", n, {}, {}, q, 1, generalized_double_sided_bound(q, 1, pow2(n))});
    for (std::uint64_t N : {4, 16, 256, 65536})
        for (std::uint64_t q : {0, 1, 2})
            rows.push_back({"fixed-point", N, {}, {}, q, 1, generalized_double_sided_bound(q, 1, N)});
    for (std::uint64_t rm : {1, 2, 4})
        for (std::uint64_t q : {0, 1})
            rows.push_back({"generalized", 16, {}, rm, q, 1, generalized_double_sided_bound(q, rm, 16)});
    const std::array<std::array<unsigned, 4>, 4> sponges{{{2, 2, 1, 2}, {4, 8, 4, 4}, {8, 16, 8, 8}, {3, 9, 7, 5}}};
    for (const auto& s : sponges) {
        const SpongeParams p(s[0], s[1], s[2], s[3]);
        const std::array<unsigned, 3> rcm{s[0], s[1], s[2]};
        for (std::uint64_t q : {0, 1, 2}) {
            rows.push_back({"sponge-preimage", s[3], rcm, {}, q, 1, preimage_bound(p, q)});
            rows.push_back({"sponge-onewayness", s[3], rcm, {}, q, 1, oneway_bound(p, q)});
            rows.push_back({"sponge-collision", s[3], rcm, {}, q, 2, collision_bound(p, q)});
            for (std::uint64_t k : {2, 3})
                rows.push_back({"sponge-multicollision", s[3], rcm, {}, q, k, multi_collision_bound(p, q, k)});
        }
    }
    for (unsigned n : {3, 8, 64, 128})
        for (std::uint64_t q : {0, 1, 2})
            rows.push_back({"icm-collision", n, {}, {}, q, 2, icm_collision_bound(n, q)});
    return rows;
}

std::string bound_table_csv(const std::vector<BoundRow>& rows)
{
    std::ostringstream os;
    os << "game,n,r,c,m,r_max,q,k,raw_bound,clamped\n";
    for (const auto& r : rows) {
        os << r.game << "," << r.n << ",";
        if (r.rcm)
            os << (*r.rcm)[0] << "," << (*r.rcm)[1] << "," << (*r.rcm)[2] << ",";
        else
            os << ",,,";
        if (r.r_max)
            os << *r.r_max;
        os << "," << r.q << "," << r.k << "," << to_string(r.raw) << "," << to_string(clamp01(r.raw)) << "\n";
    }
    return os.str();
}

}
