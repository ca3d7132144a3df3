#include "permlift.h"

#include "permlift/constructions.hpp"
#include "permlift/experiments.hpp"

#include <cstring>

struct pl_perm {
    permlift::Permutation p;
};

struct pl_cipher {
    permlift::Cipher e;
};

namespace {

thread_local std::string g_last_error;

pl_status status_of(permlift::ErrorKind k)
{
    using K = permlift::ErrorKind;
    switch (k) {
    case K::domain:
        return PL_ERR_DOMAIN;
    case K::precondition:
        return PL_ERR_PRECONDITION;
    case K::parameter:
        return PL_ERR_PARAMETER;
    case K::capability:
        return PL_ERR_CAPABILITY;
    case K::protocol:
        return PL_ERR_PROTOCOL;
    case K::parse:
        return PL_ERR_PARSE;
    case K::io:
        return PL_ERR_IO;
    }
    return PL_ERR_INTERNAL;
}

template <class F>
pl_status guarded(F&& f)
{
    try {
        f();
        g_last_error.clear();
        return PL_OK;
    } catch (const permlift::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return PL_ERR_PARSE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PL_ERR_INTERNAL;
    }
}

pl_status null_arg(const char* what)
{
    g_last_error = std::string("null argument: ") + what;
    return PL_ERR_NULL;
}

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

permlift::PairTuple pairs_of(const uint32_t* xs, const uint32_t* ys, size_t k)
{
    permlift::PairTuple t;
    for (size_t i = 0; i < k; ++i)
        t.push_back({xs[i], ys[i]});
    return t;
}

permlift::PgvSource source(int s)
{
    if (s < 0 || s > 3)
        throw permlift::ParameterError("PGV source must be 0..3");
    return static_cast<permlift::PgvSource>(s);
}

}

#define PL_REQUIRE(p)                                                                                                  \
    do {                                                                                                               \
        if (!(p))                                                                                                      \
            return null_arg(#p);                                                                                       \
    } while (0)

extern "C" {

const char* pl_last_error(void) { return g_last_error.c_str(); }

const char* pl_status_name(pl_status s)
{
    switch (s) {
    case PL_OK:
        return "ok";
    case PL_ERR_DOMAIN:
        return "domain error";
    case PL_ERR_PRECONDITION:
        return "precondition error";
    case PL_ERR_PARAMETER:
        return "parameter error";
    case PL_ERR_CAPABILITY:
        return "capability error";
    case PL_ERR_PROTOCOL:
        return "protocol error";
    case PL_ERR_PARSE:
        return "parse error";
    case PL_ERR_IO:
        return "io error";
    case PL_ERR_NULL:
        return "null argument";
    case PL_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown";
}

const char* pl_version(void) { return "1.0.0"; }

void pl_string_free(char* s) { std::free(s); }

pl_status pl_perm_new(uint32_t n, const uint32_t* fwd, pl_perm** out)
{
    PL_REQUIRE(out);
    PL_REQUIRE(fwd || n == 0);
    return guarded([&] { *out = new pl_perm{permlift::Permutation(std::vector<uint32_t>(fwd, fwd + n))}; });
}

pl_status pl_perm_identity(uint32_t n, pl_perm** out)
{
    PL_REQUIRE(out);
    return guarded([&] { *out = new pl_perm{permlift::Permutation::identity(n)}; });
}

pl_status pl_perm_load(const char* path, pl_perm** out)
{
    PL_REQUIRE(path);
    PL_REQUIRE(out);
    return guarded([&] { *out = new pl_perm{permlift::load_permutation(path)}; });
}

pl_status pl_perm_save(const pl_perm* p, const char* path)
{
    PL_REQUIRE(p);
    PL_REQUIRE(path);
    return guarded([&] { permlift::save_permutation(p->p, path); });
}

void pl_perm_free(pl_perm* p) { delete p; }

uint32_t pl_perm_size(const pl_perm* p) { return p ? p->p.size() : 0; }

pl_status pl_perm_apply(const pl_perm* p, uint32_t x, uint32_t* y)
{
    PL_REQUIRE(p);
    PL_REQUIRE(y);
    return guarded([&] { *y = p->p.at(x); });
}

pl_status pl_perm_apply_inverse(const pl_perm* p, uint32_t y, uint32_t* x)
{
    PL_REQUIRE(p);
    PL_REQUIRE(x);
    return guarded([&] { *x = p->p.inv_at(y); });
}

pl_status pl_perm_table(const pl_perm* p, uint32_t* buf, size_t len)
{
    PL_REQUIRE(p);
    PL_REQUIRE(buf);
    return guarded([&] {
        if (len < p->p.size())
            throw permlift::ParameterError("buffer shorter than the permutation");
        std::copy(p->p.table().begin(), p->p.table().end(), buf);
    });
}

pl_status pl_perm_equal(const pl_perm* a, const pl_perm* b, int* out)
{
    PL_REQUIRE(a);
    PL_REQUIRE(b);
    PL_REQUIRE(out);
    *out = a->p == b->p;
    return PL_OK;
}

pl_status pl_perm_reprogram(const pl_perm* p, uint32_t x, uint32_t y, pl_perm** out)
{
    PL_REQUIRE(p);
    PL_REQUIRE(out);
    return guarded([&] { *out = new pl_perm{permlift::reprogram(p->p, x, y)}; });
}

pl_status pl_perm_reprogram_seq(const pl_perm* p, const uint32_t* xs, const uint32_t* ys, size_t k, pl_perm** out)
{
    PL_REQUIRE(p);
    PL_REQUIRE(out);
    PL_REQUIRE((xs && ys) || k == 0);
    return guarded([&] { *out = new pl_perm{permlift::reprogram_seq(p->p, pairs_of(xs, ys, k))}; });
}

pl_status pl_pairs_disjoint(const uint32_t* xs, const uint32_t* ys, size_t k, int* out)
{
    PL_REQUIRE(out);
    PL_REQUIRE((xs && ys) || k == 0);
    return guarded([&] { *out = permlift::is_disjoint(pairs_of(xs, ys, k)); });
}

pl_status pl_perm_is_good(const pl_perm* p, const uint32_t* xs, const uint32_t* ys, size_t k, int* out)
{
    PL_REQUIRE(p);
    PL_REQUIRE(out);
    PL_REQUIRE((xs && ys) || k == 0);
    return guarded([&] { *out = permlift::is_good(p->p, pairs_of(xs, ys, k)); });
}

pl_status pl_perm_in_G(const pl_perm* pi, const pl_perm* pi_star, const uint32_t* xs, size_t k, int* out)
{
    PL_REQUIRE(pi);
    PL_REQUIRE(pi_star);
    PL_REQUIRE(out);
    PL_REQUIRE(xs || k == 0);
    return guarded([&] { *out = permlift::in_G(pi->p, pi_star->p, std::vector<uint32_t>(xs, xs + k)); });
}

pl_status pl_perm_hit_miss(const pl_perm* pi, const pl_perm* pi_star, const uint32_t* xs, size_t k, uint32_t* out)
{
    PL_REQUIRE(pi);
    PL_REQUIRE(pi_star);
    PL_REQUIRE(out);
    PL_REQUIRE(xs || k == 0);
    return guarded([&] {
        const auto hm = permlift::hit_miss(pi->p, pi_star->p, std::vector<uint32_t>(xs, xs + k));
        for (size_t j = 0; j < hm.size(); ++j) {
            out[4 * j] = hm[j].x_hit;
            out[4 * j + 1] = hm[j].x_miss;
            out[4 * j + 2] = hm[j].y_hit;
            out[4 * j + 3] = hm[j].y_miss;
        }
    });
}

pl_status pl_bad_probability_bound(uint64_t k, uint64_t n, char** out)
{
    PL_REQUIRE(out);
    return guarded([&] {
        if (n == 0)
            throw permlift::ParameterError("n must be positive");
        *out = dup(permlift::to_string(permlift::bad_probability_bound(k, n)));
    });
}

pl_status pl_cipher_new(uint32_t key_count, uint32_t n, const uint32_t* tables, pl_cipher** out)
{
    PL_REQUIRE(out);
    PL_REQUIRE(tables || key_count == 0 || n == 0);
    return guarded([&] {
        std::vector<permlift::Permutation> ps;
        for (uint32_t k = 0; k < key_count; ++k)
            ps.emplace_back(std::vector<uint32_t>(tables + std::size_t(k) * n, tables + std::size_t(k + 1) * n));
        *out = new pl_cipher{permlift::Cipher(n, std::move(ps))};
    });
}

pl_status pl_cipher_load(const char* path, pl_cipher** out)
{
    PL_REQUIRE(path);
    PL_REQUIRE(out);
    return guarded([&] { *out = new pl_cipher{permlift::load_cipher(path)}; });
}

pl_status pl_cipher_save(const pl_cipher* e, const char* path)
{
    PL_REQUIRE(e);
    PL_REQUIRE(path);
    return guarded([&] { permlift::save_cipher(e->e, path); });
}

void pl_cipher_free(pl_cipher* e) { delete e; }

pl_status pl_cipher_enc(const pl_cipher* e, uint32_t key, uint32_t x, uint32_t* y)
{
    PL_REQUIRE(e);
    PL_REQUIRE(y);
    return guarded([&] { *y = e->e.perm(key).at(x); });
}

pl_status pl_cipher_dec(const pl_cipher* e, uint32_t key, uint32_t y, uint32_t* x)
{
    PL_REQUIRE(e);
    PL_REQUIRE(x);
    return guarded([&] { *x = e->e.perm(key).inv_at(y); });
}

pl_status pl_cipher_reprogram(const pl_cipher* e, uint32_t key, uint32_t x, uint32_t y, pl_cipher** out)
{
    PL_REQUIRE(e);
    PL_REQUIRE(out);
    return guarded([&] { *out = new pl_cipher{permlift::cipher_reprogram(e->e, {key, x, y})}; });
}

pl_status pl_sponge(uint32_t r, uint32_t c, uint32_t m, uint32_t n, const pl_perm* pi, uint64_t x, uint64_t* out)
{
    PL_REQUIRE(pi);
    PL_REQUIRE(out);
    return guarded([&] { *out = permlift::sponge(permlift::SpongeParams(r, c, m, n), pi->p, x); });
}

pl_status pl_davies_meyer(const pl_cipher* e, uint32_t h, uint32_t msg, uint32_t* out)
{
    PL_REQUIRE(e);
    PL_REQUIRE(out);
    return guarded([&] { *out = permlift::davies_meyer(e->e, h, msg); });
}

pl_status pl_pgv(const pl_cipher* e, int key_src, int input_src, int ff_src, uint32_t v, uint32_t h, uint32_t msg,
                 uint32_t* out)
{
    PL_REQUIRE(e);
    PL_REQUIRE(out);
    return guarded([&] {
        *out = permlift::pgv(e->e, {source(key_src), source(input_src), source(ff_src)}, v, h, msg);
    });
}

pl_status pl_pgv_group(int key_src, int input_src, int ff_src, int* group)
{
    PL_REQUIRE(group);
    return guarded([&] { *group = permlift::pgv_group({source(key_src), source(input_src), source(ff_src)}); });
}

pl_status pl_game_bound(const char* game, const char* params_json, char** report_json)
{
    PL_REQUIRE(game);
    PL_REQUIRE(report_json);
    return guarded([&] {
        const auto j = params_json ? nlohmann::json::parse(params_json) : nlohmann::json::object();
        permlift::GameParams p;
        p.n = j.value("n", p.n);
        p.q = j.value("q", p.q);
        p.k = j.value("k", p.k);
        if (j.contains("r_max"))
            p.r_max = j.at("r_max").get<std::uint64_t>();
        p.r = j.value("r", p.r);
        p.c = j.value("c", p.c);
        p.m = j.value("m", p.m);
        *report_json = dup(permlift::to_json(permlift::game_bound(game, p)).dump());
    });
}

pl_status pl_bound_table_csv(char** csv)
{
    PL_REQUIRE(csv);
    return guarded([&] { *csv = dup(permlift::bound_table_csv(permlift::bound_table())); });
}

pl_status pl_run_experiment(const char* config_json, char** report_json, int* passed)
{
    PL_REQUIRE(config_json);
    PL_REQUIRE(report_json);
    return guarded([&] {
        const auto cfg = permlift::config_from_json(nlohmann::json::parse(config_json));
        const auto report = permlift::run_experiment(cfg);
        if (passed)
            *passed = report.at("verdict") == "pass";
        *report_json = dup(report.dump(2));
    });
}

}
