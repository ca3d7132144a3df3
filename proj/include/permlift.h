#ifndef PERMLIFT_H
#define PERMLIFT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(PERMLIFT_BUILDING)
#define PL_API __attribute__((visibility("default")))
#else
#define PL_API
#endif

typedef struct pl_perm pl_perm;
typedef struct pl_cipher pl_cipher;

typedef enum pl_status {
    PL_OK = 0,
    PL_ERR_DOMAIN = 1,
    PL_ERR_PRECONDITION = 2,
    PL_ERR_PARAMETER = 3,
    PL_ERR_CAPABILITY = 4,
    PL_ERR_PROTOCOL = 5,
    PL_ERR_PARSE = 6,
    PL_ERR_IO = 7,
    PL_ERR_NULL = 8,
    PL_ERR_INTERNAL = 9
} pl_status;

/* Message for the last failing call on this thread; empty after a success. */
PL_API const char* pl_last_error(void);
PL_API const char* pl_status_name(pl_status s);
PL_API const char* pl_version(void);
/* Frees strings returned through char** out-parameters. */
PL_API void pl_string_free(char* s);

/* Permutations on {0..n-1}. */
PL_API pl_status pl_perm_new(uint32_t n, const uint32_t* fwd, pl_perm** out);
PL_API pl_status pl_perm_identity(uint32_t n, pl_perm** out);
PL_API pl_status pl_perm_load(const char* path, pl_perm** out);
PL_API pl_status pl_perm_save(const pl_perm* p, const char* path);
PL_API void pl_perm_free(pl_perm* p);
PL_API uint32_t pl_perm_size(const pl_perm* p);
PL_API pl_status pl_perm_apply(const pl_perm* p, uint32_t x, uint32_t* y);
PL_API pl_status pl_perm_apply_inverse(const pl_perm* p, uint32_t y, uint32_t* x);
/* Copies the forward table into buf, which must hold pl_perm_size(p) entries. */
PL_API pl_status pl_perm_table(const pl_perm* p, uint32_t* buf, size_t len);
PL_API pl_status pl_perm_equal(const pl_perm* a, const pl_perm* b, int* out);
/* π[x→y] as a new handle. */
PL_API pl_status pl_perm_reprogram(const pl_perm* p, uint32_t x, uint32_t y, pl_perm** out);
/* Left fold over k pairs (xs[i], ys[i]). */
PL_API pl_status pl_perm_reprogram_seq(const pl_perm* p, const uint32_t* xs, const uint32_t* ys, size_t k, pl_perm** out);
PL_API pl_status pl_pairs_disjoint(const uint32_t* xs, const uint32_t* ys, size_t k, int* out);
PL_API pl_status pl_perm_is_good(const pl_perm* p, const uint32_t* xs, const uint32_t* ys, size_t k, int* out);
PL_API pl_status pl_perm_in_G(const pl_perm* pi, const pl_perm* pi_star, const uint32_t* xs, size_t k, int* out);
/* out receives 4k values: x_hit, x_miss, y_hit, y_miss per index. */
PL_API pl_status pl_perm_hit_miss(const pl_perm* pi, const pl_perm* pi_star, const uint32_t* xs, size_t k, uint32_t* out);
/* k²/n as a "p/q" string. */
PL_API pl_status pl_bad_probability_bound(uint64_t k, uint64_t n, char** out);

/* Ciphers: key_count tables of n entries each, key-major. */
PL_API pl_status pl_cipher_new(uint32_t key_count, uint32_t n, const uint32_t* tables, pl_cipher** out);
PL_API pl_status pl_cipher_load(const char* path, pl_cipher** out);
PL_API pl_status pl_cipher_save(const pl_cipher* e, const char* path);
PL_API void pl_cipher_free(pl_cipher* e);
PL_API pl_status pl_cipher_enc(const pl_cipher* e, uint32_t key, uint32_t x, uint32_t* y);
PL_API pl_status pl_cipher_dec(const pl_cipher* e, uint32_t key, uint32_t y, uint32_t* x);
PL_API pl_status pl_cipher_reprogram(const pl_cipher* e, uint32_t key, uint32_t x, uint32_t y, pl_cipher** out);

/* Constructions. Bit strings are integers with the leftmost bit most significant. */
PL_API pl_status pl_sponge(uint32_t r, uint32_t c, uint32_t m, uint32_t n, const pl_perm* pi, uint64_t x, uint64_t* out);
PL_API pl_status pl_davies_meyer(const pl_cipher* e, uint32_t h, uint32_t msg, uint32_t* out);
/* Sources: 0 constant, 1 h, 2 m, 3 h xor m. */
PL_API pl_status pl_pgv(const pl_cipher* e, int key_src, int input_src, int ff_src, uint32_t v, uint32_t h, uint32_t msg,
                        uint32_t* out);
PL_API pl_status pl_pgv_group(int key_src, int input_src, int ff_src, int* group);

/* JSON parameters {"n","q","k","r_max","r","c","m"}; JSON report out. */
PL_API pl_status pl_game_bound(const char* game, const char* params_json, char** report_json);
PL_API pl_status pl_bound_table_csv(char** csv);

/* Runs an experiment described by a JSON config. *passed is 1 when the verdict is pass. */
PL_API pl_status pl_run_experiment(const char* config_json, char** report_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif
