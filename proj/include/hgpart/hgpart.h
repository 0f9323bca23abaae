#ifndef HGPART_H
#define HGPART_H

/* C interface of the hypergraph partitioner. Every object is an opaque
 * handle owned by the caller and released with the matching _destroy call.
 * Functions that can fail return an hgp_status; on failure the message is
 * available from hgp_last_error() on the same thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HGPART_BUILDING)
#    define HGPART_API __declspec(dllexport)
#  else
#    define HGPART_API __declspec(dllimport)
#  endif
#else
#  define HGPART_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hgp_status {
  HGP_OK = 0,
  HGP_ERR_INVALID_ARGUMENT = 1,
  HGP_ERR_PARSE = 2,
  HGP_ERR_IO = 3,
  HGP_ERR_NUMERICAL = 4,
  HGP_ERR_INTERNAL = 5
} hgp_status;

typedef enum hgp_p_rule {
  HGP_P_SQRT_HALF_N = 0, /* ceil(sqrt(n / 2)) */
  HGP_P_N_OVER_5K = 1    /* ceil(n / (5 k)) */
} hgp_p_rule;

typedef struct hgp_hypergraph hgp_hypergraph;
typedef struct hgp_config hgp_config;
typedef struct hgp_result hgp_result;

/* Message of the last failed call on this thread; empty if none. */
HGPART_API const char* hgp_last_error(void);
HGPART_API const char* hgp_status_name(hgp_status status);

/* ---- hypergraphs ---- */

HGPART_API hgp_status hgp_hypergraph_read(const char* path, hgp_hypergraph** out);
HGPART_API hgp_status hgp_hypergraph_parse(const char* text, size_t length, hgp_hypergraph** out);
/* Hyperedge e has pins[edge_offsets[e] .. edge_offsets[e + 1]), 0-based.
 * Either weight array may be NULL for unit weights. */
HGPART_API hgp_status hgp_hypergraph_create(uint32_t num_vertices, uint32_t num_edges,
                                            const int64_t* vertex_weights,
                                            const int64_t* edge_weights,
                                            const uint64_t* edge_offsets, const uint32_t* pins,
                                            hgp_hypergraph** out);
HGPART_API void hgp_hypergraph_destroy(hgp_hypergraph* h);
HGPART_API uint32_t hgp_hypergraph_num_vertices(const hgp_hypergraph* h);
HGPART_API uint32_t hgp_hypergraph_num_edges(const hgp_hypergraph* h);
HGPART_API int64_t hgp_hypergraph_total_vertex_weight(const hgp_hypergraph* h);

/* ---- configuration ---- */

HGPART_API hgp_status hgp_config_create(hgp_config** out);
HGPART_API void hgp_config_destroy(hgp_config* config);
HGPART_API hgp_status hgp_config_set_k(hgp_config* config, int32_t k);
/* Setting epsilon clears ubfactor and vice versa. */
HGPART_API hgp_status hgp_config_set_epsilon(hgp_config* config, double epsilon);
HGPART_API hgp_status hgp_config_set_ubfactor(hgp_config* config, double ubfactor);
HGPART_API hgp_status hgp_config_set_num_init(hgp_config* config, int32_t num_init);
/* 0 selects all available cores. */
HGPART_API hgp_status hgp_config_set_threads(hgp_config* config, int32_t threads);
HGPART_API hgp_status hgp_config_set_deterministic(hgp_config* config, int deterministic);
HGPART_API hgp_status hgp_config_set_lambda1(hgp_config* config, const double* values, size_t count);
HGPART_API hgp_status hgp_config_set_lambda2(hgp_config* config, const double* values, size_t count);
HGPART_API hgp_status hgp_config_set_xi1(hgp_config* config, const double* values, size_t count);
HGPART_API hgp_status hgp_config_set_xi2(hgp_config* config, const double* values, size_t count);
HGPART_API hgp_status hgp_config_set_p_rules(hgp_config* config, const hgp_p_rule* rules,
                                             size_t count);
/* A fixed cluster count overrides the p rules; 0 restores them. */
HGPART_API hgp_status hgp_config_set_fixed_p(hgp_config* config, size_t p);
HGPART_API hgp_status hgp_config_set_tau(hgp_config* config, double tau);
HGPART_API hgp_status hgp_config_set_apg_max_iters(hgp_config* config, int32_t max_iters);
HGPART_API hgp_status hgp_config_set_apg_tolerance(hgp_config* config, double tolerance);

/* ---- operations ---- */

HGPART_API hgp_status hgp_partition(const hgp_hypergraph* h, const hgp_config* config,
                                    hgp_result** out);
/* Repairs (if needed) and improves an existing assignment of length n. */
HGPART_API hgp_status hgp_improve(const hgp_hypergraph* h, const hgp_config* config,
                                  const int32_t* assignment, size_t n, hgp_result** out);
/* Cutsize, block weights, caps and feasibility of an assignment. */
HGPART_API hgp_status hgp_evaluate(const hgp_hypergraph* h, const hgp_config* config,
                                   const int32_t* assignment, size_t n, hgp_result** out);
/* Reads a partition file for h with ids in [0, k) into out[0 .. n). */
HGPART_API hgp_status hgp_read_partition(const char* path, const hgp_hypergraph* h, int32_t k,
                                         int32_t* out, size_t n);

/* ---- results ---- */

HGPART_API void hgp_result_destroy(hgp_result* result);
HGPART_API int64_t hgp_result_cutsize(const hgp_result* result);
HGPART_API int hgp_result_feasible(const hgp_result* result);
HGPART_API int32_t hgp_result_k(const hgp_result* result);
HGPART_API size_t hgp_result_num_vertices(const hgp_result* result);
HGPART_API const int32_t* hgp_result_assignment(const hgp_result* result);
HGPART_API int64_t hgp_result_block_weight(const hgp_result* result, int32_t block);
HGPART_API int64_t hgp_result_max_block_weight(const hgp_result* result);
HGPART_API double hgp_result_epsilon(const hgp_result* result);
/* key=value lines; valid until the result is destroyed. */
HGPART_API const char* hgp_result_metrics(const hgp_result* result);
HGPART_API hgp_status hgp_result_write_partition(const hgp_result* result, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* HGPART_H */
