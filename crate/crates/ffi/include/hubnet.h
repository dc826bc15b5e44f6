#ifndef HUBNET_H
#define HUBNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HubnetStatus {
  HUBNET_STATUS_OK = 0,
  HUBNET_STATUS_NULL_POINTER = 1,
  HUBNET_STATUS_INVALID_CONFIG = 2,
  HUBNET_STATUS_DIMENSION_MISMATCH = 3,
  // Pruning mass, spectrum or another quantity was degenerate.
  HUBNET_STATUS_NUMERICAL = 4,
  HUBNET_STATUS_IO = 5,
  HUBNET_STATUS_PARSE = 6,
  HUBNET_STATUS_PANIC = 7,
  HUBNET_STATUS_OTHER = 8,
} HubnetStatus;

typedef enum HubnetPruneMode {
  HUBNET_PRUNE_MODE_HUB = 0,
  HUBNET_PRUNE_MODE_RANDOM = 1,
} HubnetPruneMode;

typedef enum HubnetConstraintScaling {
  HUBNET_CONSTRAINT_SCALING_RAW = 0,
  HUBNET_CONSTRAINT_SCALING_MAX = 1,
} HubnetConstraintScaling;

typedef enum HubnetInjection {
  HUBNET_INJECTION_HUB = 0,
  HUBNET_INJECTION_RANDOM = 1,
} HubnetInjection;

// Opaque echo state network handle.
typedef struct HubnetEsn HubnetEsn;

// Opaque network handle.
typedef struct HubnetNetwork HubnetNetwork;

// Opaque readout handle.
typedef struct HubnetReadout HubnetReadout;

typedef struct HubnetTopologyConfig {
  size_t n;
  double density;
  double alpha;
  double beta;
  double lambda_dc;
  double lambda_nc;
  double lambda_reg;
  double weight_sigma2;
  enum HubnetPruneMode mode;
  enum HubnetConstraintScaling constraint_scaling;
  uint64_t seed;
} HubnetTopologyConfig;

typedef struct HubnetMetrics {
  double cv;
  double modularity;
  double clustering;
  size_t unconnected;
} HubnetMetrics;

typedef struct HubnetEsnConfig {
  struct HubnetTopologyConfig topology;
  size_t input_dim;
  size_t output_dim;
  double spec_rad;
  double r_sig;
  enum HubnetInjection injection;
  size_t washout;
  bool bias;
  uint64_t seed;
} HubnetEsnConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *hubnet_version(void);

// Message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next hubnet call on the same thread.
const char *hubnet_last_error(void);

// Frees a string returned by this library.
void hubnet_string_free(char *s);

// Fills `out` with the default pruning parameters for `n` nodes.
enum HubnetStatus hubnet_topology_config_default(size_t n, struct HubnetTopologyConfig *out);

// Generates a network. Release it with [`hubnet_network_free`].
enum HubnetStatus hubnet_network_generate(const struct HubnetTopologyConfig *config,
                                          struct HubnetNetwork **out);

// Parses network JSON as written by [`hubnet_network_to_json`].
enum HubnetStatus hubnet_network_from_json(const char *json, struct HubnetNetwork **out);

void hubnet_network_free(struct HubnetNetwork *net);

// Node count, or 0 for NULL.
size_t hubnet_network_size(const struct HubnetNetwork *net);

// Nonzero off-diagonal weights, or 0 for NULL.
size_t hubnet_network_edge_count(const struct HubnetNetwork *net);

// Copies the n×n weight matrix (row i holds edges into node i).
enum HubnetStatus hubnet_network_weights(const struct HubnetNetwork *net, double *out, size_t len);

// Copies the total (in + out) degree of each node.
enum HubnetStatus hubnet_network_degrees(const struct HubnetNetwork *net, size_t *out, size_t len);

// CV, Louvain modularity (ascending visit order), clustering and
// unconnected count. Undefined values are NaN.
enum HubnetStatus hubnet_network_metrics(const struct HubnetNetwork *net,
                                         struct HubnetMetrics *out);

// Serializes to JSON. Free the string with [`hubnet_string_free`].
enum HubnetStatus hubnet_network_to_json(const struct HubnetNetwork *net, char **out);

// Fills `out` with the default reservoir settings for `n` neurons and
// scalar input and output.
enum HubnetStatus hubnet_esn_config_default(size_t n, struct HubnetEsnConfig *out);

// Builds a reservoir from `config->seed`. Release with [`hubnet_esn_free`].
enum HubnetStatus hubnet_esn_new(const struct HubnetEsnConfig *config, struct HubnetEsn **out);

void hubnet_esn_free(struct HubnetEsn *esn);

// Neuron count, or 0 for NULL.
size_t hubnet_esn_size(const struct HubnetEsn *esn);

// Writes 1 for neurons that receive input and 0 otherwise.
enum HubnetStatus hubnet_esn_input_mask(const struct HubnetEsn *esn, uint8_t *out, size_t len);

// Copies the total degree of each neuron in the unscaled topology.
enum HubnetStatus hubnet_esn_degrees(const struct HubnetEsn *esn, size_t *out, size_t len);

// Runs `steps` inputs (`steps × input_dim`) from `s0` (length n, or NULL
// for zeros) and writes the `steps × n` states.
enum HubnetStatus hubnet_esn_harvest(const struct HubnetEsn *esn,
                                     const double *inputs,
                                     size_t steps,
                                     const double *s0,
                                     double *states_out);

// Fits the minimum-norm least-squares readout of `targets` (`rows ×
// outputs`) on `states` (`rows × cols`). Release with
// [`hubnet_readout_free`].
enum HubnetStatus hubnet_readout_fit(const double *states,
                                     size_t rows,
                                     size_t cols,
                                     const double *targets,
                                     size_t outputs,
                                     size_t washout,
                                     bool bias,
                                     struct HubnetReadout **out);

void hubnet_readout_free(struct HubnetReadout *r);

// Copies `W_out` (`cols × outputs`) and, when `bias_out` is not NULL and the
// readout has an intercept, the `outputs` bias values.
enum HubnetStatus hubnet_readout_weights(const struct HubnetReadout *r,
                                         double *out,
                                         size_t len,
                                         double *bias_out);

// Applies the readout to `rows` state rows and writes `rows × outputs`.
enum HubnetStatus hubnet_readout_predict(const struct HubnetReadout *r,
                                         const double *states,
                                         size_t rows,
                                         double *out);

// Mackey-Glass with the standard parameters. Either output may be NULL.
enum HubnetStatus hubnet_mackey_glass(size_t length,
                                      size_t transient,
                                      double x0,
                                      double *raw_out,
                                      double *normalized_out);

// NARMA10 with the standard parameters: `length` inputs into `u_out` and
// `length + 1` states into `x_out`.
enum HubnetStatus hubnet_narma10(size_t length, uint64_t seed, double *u_out, double *x_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HUBNET_H */
