/* C interface to noisebound. Generated by cbindgen; do not edit. */

#ifndef NOISEBOUND_H
#define NOISEBOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. Anything but OK leaves a message for
 * [`nb_last_error_message`].
 */
typedef enum {
  NB_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL, or a buffer had the wrong size.
   */
  NB_STATUS_NULL_POINTER,
  /**
   * Parameters outside the channel or test domain: η ∉ [0,1], G < 1,
   * negative occupations, ε ∉ (0,1), hypotheses that coincide.
   */
  NB_STATUS_INVALID_ARGUMENT,
  /**
   * The inputs describe no physical Gaussian state, or the requested
   * quantity needs a full-rank second argument.
   */
  NB_STATUS_UNPHYSICAL,
  /**
   * The quantity is infinite at these inputs (vacuum alternatives and
   * high Rényi orders).
   */
  NB_STATUS_DIVERGENT,
  /**
   * A numerical guard tripped: truncation too small, finite-difference
   * step unusable, tolerance breach.
   */
  NB_STATUS_NUMERICAL,
} NbStatus;

/**
 * A Gaussian channel with fixed transmissivity or gain and environment
 * occupation.
 */
typedef struct NbChannel NbChannel;

/**
 * A zero-mean Gaussian state: mode count plus covariance matrix.
 */
typedef struct NbState NbState;

/**
 * Optimal randomized threshold test on the total count of m geometric
 * observations, discriminating mean `n1` from `n2` at type-I budget ε.
 */
typedef struct {
  /**
   * −ln β at the optimum.
   */
  double dh;
  double log_beta;
  /**
   * Count threshold on the total.
   */
  uint64_t threshold;
  /**
   * Acceptance probability exactly at the threshold.
   */
  double randomization;
  /**
   * Nonzero when the acceptance region is total < threshold.
   */
  bool accept_below;
  /**
   * Exact type-I error the test achieves.
   */
  double size;
} NbBinaryTest;

/**
 * Photon-counting strategy versus the environment benchmark at one probe
 * energy. All error quantities in nats.
 */
typedef struct {
  /**
   * Counted-mode mean under either hypothesis.
   */
  double n_eff_1;
  double n_eff_2;
  /**
   * −ln β of the counting strategy.
   */
  double dh_strategy;
  /**
   * −ln β of the exact test on the environment pair.
   */
  double dh_environment;
  /**
   * Second-order expansion of the environment benchmark.
   */
  double second_order;
  /**
   * dh_environment − dh_strategy, nonnegative up to roundoff.
   */
  double gap;
} NbStrategyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Empty string when no
 * call has failed yet. The pointer stays valid until the next failing call
 * on the same thread.
 */
const char *nb_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nb_version(void);

/**
 * Lossy thermal channel with transmissivity `eta` in [0,1] and environment
 * mean photon number `n_b` ≥ 0.
 *
 * # Safety
 * `out` must be a valid pointer; on OK it receives a handle to release with
 * [`nb_channel_free`].
 */
NbStatus nb_channel_thermal(double eta, double n_b, NbChannel **out);

/**
 * Phase-insensitive amplifier with gain ≥ 1.
 *
 * # Safety
 * As [`nb_channel_thermal`].
 */
NbStatus nb_channel_amplifier(double gain, double n_b, NbChannel **out);

/**
 * Releases a channel handle. NULL is accepted and ignored.
 *
 * # Safety
 * `channel` must have come from a constructor in this library and must not
 * be used afterwards.
 */
void nb_channel_free(NbChannel *channel);

/**
 * Single-mode thermal state with mean photon number `n_b`.
 *
 * # Safety
 * `out` must be valid; on OK it receives a handle to release with
 * [`nb_state_free`].
 */
NbStatus nb_state_thermal(double n_b, NbState **out);

/**
 * Two-mode squeezed vacuum with per-arm mean photon number `n_s`.
 *
 * # Safety
 * As [`nb_state_thermal`].
 */
NbStatus nb_state_tmsv(double n_s, NbState **out);

/**
 * Output of sending one arm of a TMSV probe with energy `n_s` through the
 * channel, the other arm kept ideal: a two-mode state.
 *
 * # Safety
 * `channel` must be a live channel handle; `out` as in
 * [`nb_state_thermal`].
 */
NbStatus nb_probe_output(const NbChannel *channel, double n_s, NbState **out);

/**
 * Releases a state handle. NULL is accepted and ignored.
 *
 * # Safety
 * `state` must have come from this library and must not be used afterwards.
 */
void nb_state_free(NbState *state);

/**
 * Number of modes of a state.
 *
 * # Safety
 * Both pointers must be valid.
 */
NbStatus nb_state_mode_count(const NbState *state, size_t *out);

/**
 * Copies the covariance matrix, row major in (x_1..x_n, p_1..p_n) ordering
 * with vacuum variance 1/2, into `buf`. `len` must be exactly (2n)² for an
 * n-mode state.
 *
 * # Safety
 * `state` must be live and `buf` must point to `len` writable doubles.
 */
NbStatus nb_state_covariance(const NbState *state, double *buf, size_t len);

/**
 * Umegaki relative entropy D(a‖b) in nats.
 *
 * # Safety
 * All pointers must be valid; the states must have equal mode counts.
 */
NbStatus nb_relative_entropy(const NbState *a, const NbState *b, double *out);

/**
 * Relative entropy variance V(a‖b) in nats².
 *
 * # Safety
 * As [`nb_relative_entropy`].
 */
NbStatus nb_relative_entropy_variance(const NbState *a, const NbState *b, double *out);

/**
 * Uhlmann fidelity F(a,b) ∈ [0,1].
 *
 * # Safety
 * As [`nb_relative_entropy`].
 */
NbStatus nb_fidelity(const NbState *a, const NbState *b, double *out);

/**
 * Closed-form D, V, F between single-mode thermal states of means `n1`, `n2`.
 *
 * # Safety
 * The out pointers must each be valid.
 */
NbStatus nb_thermal_divergences(double n1, double n2, double *d, double *v, double *f);

/**
 * Petz-Rényi divergence of order `alpha` between thermal states.
 *
 * # Safety
 * `out` must be valid.
 */
NbStatus nb_renyi_thermal(double alpha, double n1, double n2, double *out);

/**
 * Quantum Fisher information for estimating the mean photon number of a
 * thermal state: 1/(n_b(n_b+1)).
 *
 * # Safety
 * `out` must be valid.
 */
NbStatus nb_qfi_thermal(double n_b, double *out);

/**
 * Exact Neyman-Pearson test for m-copy thermal discrimination.
 *
 * # Safety
 * `out` must be valid.
 */
NbStatus nb_exact_binary_test(uint64_t m, double n1, double n2, double epsilon, NbBinaryTest *out);

/**
 * Full strategy-versus-bound comparison: the channels must share their
 * fixed parameter and differ only in environment occupation.
 *
 * # Safety
 * `c1` and `c2` must be live channel handles and `out` valid.
 */
NbStatus nb_bound_gap(const NbChannel *c1,
                      const NbChannel *c2,
                      double n_s,
                      uint32_t m,
                      double epsilon,
                      NbStrategyReport *out);

/**
 * Mean photon number of the counted mode after the decoupling symplectic,
 * at environment occupation `n_b`.
 *
 * # Safety
 * `channel` must be a live handle and `out` valid.
 */
NbStatus nb_effective_thermal_mean(const NbChannel *channel, double n_s, double n_b, double *out);

/**
 * Second-order expansion m·d + √(m·v)·Φ⁻¹(ε) of the hypothesis-testing
 * relative entropy.
 *
 * # Safety
 * `out` must be valid.
 */
NbStatus nb_second_order_dh(uint64_t m, double d, double v, double epsilon, double *out);

/**
 * Cramér-Rao floor n_b(n_b+1)/m on the variance of an unbiased
 * excess-noise estimator.
 *
 * # Safety
 * `out` must be valid.
 */
NbStatus nb_cramer_rao(uint64_t m, double n_b, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NOISEBOUND_H */
