/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef TVWS_FCCA_H
#define TVWS_FCCA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TvwsStatus {
  TVWS_STATUS_OK = 0,
  TVWS_STATUS_NULL_POINTER = 1,
  TVWS_STATUS_INVALID_ARGUMENT = 2,
  TVWS_STATUS_VALIDATION = 3,
  TVWS_STATUS_IO = 4,
  TVWS_STATUS_PARSE = 5,
  TVWS_STATUS_BUFFER_TOO_SMALL = 6,
  TVWS_STATUS_INTERNAL = 7,
} TvwsStatus;

typedef enum TvwsSubAlgorithm {
  TVWS_SUB_ALGORITHM_MDCA = 0,
  TVWS_SUB_ALGORITHM_ODRS_CA = 1,
} TvwsSubAlgorithm;

// Which allocation of an outcome to read.
typedef enum TvwsCandidate {
  TVWS_CANDIDATE_MDCA = 0,
  TVWS_CANDIDATE_ODRS_CA = 1,
  TVWS_CANDIDATE_CHOSEN = 2,
} TvwsCandidate;

typedef enum TvwsChannelMode {
  TVWS_CHANNEL_MODE_UNASSIGNED = 0,
  TVWS_CHANNEL_MODE_DEDICATED = 1,
  TVWS_CHANNEL_MODE_SHARED = 2,
} TvwsChannelMode;

// Per-eNB series stored in a report.
typedef enum TvwsSeries {
  TVWS_SERIES_THROUGHPUT_BPS = 0,
  TVWS_SERIES_SPECTRAL_EFFICIENCY = 1,
  TVWS_SERIES_AIRTIME = 2,
} TvwsSeries;

typedef struct TvwsAllocation TvwsAllocation;

typedef struct TvwsOutcome TvwsOutcome;

typedef struct TvwsReport TvwsReport;

// A validated topology together with its channel plan, threshold, MAC and
// fairness settings.
typedef struct TvwsTopology TvwsTopology;

typedef struct TvwsRadioParams {
  double tx_power_dbm;
  double tx_gain_db;
  double rx_gain_db;
  double cable_loss_db;
  double noise_figure_db;
  double tx_height_m;
  double rx_height_m;
  double center_freq_mhz;
  double rx_sensitivity_dbm;
} TvwsRadioParams;

typedef struct TvwsMacParams {
  double slot_us;
  double txop_ms;
  double sim_time_s;
  uint32_t contention_window_slots;
  uint64_t rng_seed;
  double spectral_efficiency_cap;
  // Non-zero: neighbors whose backoff ends in the same slot all transmit.
  uint8_t collide;
} TvwsMacParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the calling thread's last failure, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *tvws_last_error(void);

void tvws_clear_error(void);

// Reference link-budget parameters (18 dBm, 10 dBi, 500 MHz, -101 dBm).
struct TvwsRadioParams tvws_radio_params_reference(void);

struct TvwsMacParams tvws_mac_params_default(void);

// # Safety
// `radio` and `out_db` must be valid pointers or NULL.
enum TvwsStatus tvws_max_allowed_path_loss(const struct TvwsRadioParams *radio, double *out_db);

// # Safety
// `radio` and `out_km` must be valid pointers or NULL.
enum TvwsStatus tvws_coverage_radius(const struct TvwsRadioParams *radio, double *out_km);

// Suburban Hata path loss in dB; fails outside the model's validity ranges.
//
// # Safety
// `out_db` must be a valid pointer or NULL.
enum TvwsStatus tvws_hata_suburban(double d_km,
                                   double f_mhz,
                                   double tx_height_m,
                                   double rx_height_m,
                                   double *out_db);

// Jain's fairness index of `count` throughputs.
//
// # Safety
// `values` must point to `count` doubles; `out_jfi` must be valid or NULL.
enum TvwsStatus tvws_jfi(const double *values, size_t count, double *out_jfi);

// # Safety
// `out_mbps` must be a valid pointer or NULL.
enum TvwsStatus tvws_demand_mbps(double population_per_village,
                                 double villages,
                                 double rate_mbps,
                                 double contention_ratio,
                                 double household_size,
                                 double *out_mbps);

// Parses and validates a topology from TOML text.
//
// # Safety
// `toml` must be a NUL-terminated string; `out_topology` valid or NULL.
enum TvwsStatus tvws_topology_from_toml(const char *toml, struct TvwsTopology **out_topology);

// Loads and validates a topology file.
//
// # Safety
// `path` must be a NUL-terminated string; `out_topology` valid or NULL.
enum TvwsStatus tvws_topology_load(const char *path, struct TvwsTopology **out_topology);

// Number of eNBs, or 0 for NULL.
//
// # Safety
// `topology` must be a handle from this library or NULL.
size_t tvws_topology_enb_count(const struct TvwsTopology *topology);

// Number of channels in the topology's plan, or 0 for NULL.
//
// # Safety
// `topology` must be a handle from this library or NULL.
size_t tvws_topology_channel_count(const struct TvwsTopology *topology);

// MAC settings stored with the topology (defaults unless its file set them).
//
// # Safety
// Pointers must be valid or NULL.
enum TvwsStatus tvws_topology_mac_params(const struct TvwsTopology *topology,
                                         struct TvwsMacParams *out_mac);

// # Safety
// `topology` must be a handle from this library or NULL; it must not be
// used afterwards.
void tvws_topology_free(struct TvwsTopology *topology);

// Runs FCCA on `topology`. `mac` may be NULL to use the topology's MAC
// settings; `delta` outside (0, 1] uses the topology's threshold.
//
// # Safety
// Pointers must be valid or NULL; `topology` must be a live handle.
enum TvwsStatus tvws_allocate(const struct TvwsTopology *topology,
                              const struct TvwsMacParams *mac,
                              double delta,
                              struct TvwsOutcome **out_outcome);

// # Safety
// Pointers must be valid or NULL.
enum TvwsStatus tvws_outcome_sub_algorithm(const struct TvwsOutcome *outcome,
                                           enum TvwsSubAlgorithm *out_sub);

// Sum throughput (b/s) and fairness index of one candidate. Either out
// pointer may be NULL.
//
// # Safety
// `outcome` must be a live handle; out pointers valid or NULL.
enum TvwsStatus tvws_outcome_score(const struct TvwsOutcome *outcome,
                                   enum TvwsCandidate which,
                                   double *out_total_bps,
                                   double *out_fairness);

// Copies one candidate allocation into a new handle.
//
// # Safety
// `outcome` must be a live handle; `out_allocation` valid or NULL.
enum TvwsStatus tvws_outcome_allocation(const struct TvwsOutcome *outcome,
                                        enum TvwsCandidate which,
                                        struct TvwsAllocation **out_allocation);

// # Safety
// `outcome` must be a handle from this library or NULL.
void tvws_outcome_free(struct TvwsOutcome *outcome);

// Parses the plain-text matrix format (rows of `0`, `D`, `S`).
//
// # Safety
// `text` must be NUL-terminated; `out_allocation` valid or NULL.
enum TvwsStatus tvws_allocation_parse(const char *text, struct TvwsAllocation **out_allocation);

// # Safety
// `allocation` must be a handle from this library or NULL.
size_t tvws_allocation_enb_count(const struct TvwsAllocation *allocation);

// # Safety
// `allocation` must be a handle from this library or NULL.
size_t tvws_allocation_channel_count(const struct TvwsAllocation *allocation);

// # Safety
// Pointers must be valid or NULL.
enum TvwsStatus tvws_allocation_cell(const struct TvwsAllocation *allocation,
                                     size_t enb,
                                     size_t channel,
                                     enum TvwsChannelMode *out_mode);

// Writes the allocation in the plain-text matrix format.
//
// # Safety
// `buf` must hold `capacity` bytes (or be NULL to query `needed`).
enum TvwsStatus tvws_allocation_text(const struct TvwsAllocation *allocation,
                                     char *buf,
                                     size_t capacity,
                                     size_t *needed);

// # Safety
// `allocation` must be a handle from this library or NULL.
void tvws_allocation_free(struct TvwsAllocation *allocation);

// Simulates `allocation` over `topology`. `mac` may be NULL to use the
// topology's MAC settings.
//
// # Safety
// Pointers must be valid or NULL; handles must be live.
enum TvwsStatus tvws_simulate(const struct TvwsTopology *topology,
                              const struct TvwsAllocation *allocation,
                              const struct TvwsMacParams *mac,
                              struct TvwsReport **out_report);

// # Safety
// `report` must be a handle from this library or NULL.
size_t tvws_report_enb_count(const struct TvwsReport *report);

// Jain's index and total throughput (b/s). Either out pointer may be NULL.
//
// # Safety
// `report` must be a live handle; out pointers valid or NULL.
enum TvwsStatus tvws_report_summary(const struct TvwsReport *report,
                                    double *out_jfi,
                                    double *out_total_bps);

// Copies one per-eNB series into `values`, which must hold at least
// `tvws_report_enb_count` doubles.
//
// # Safety
// `values` must point to `capacity` writable doubles.
enum TvwsStatus tvws_report_series(const struct TvwsReport *report,
                                   enum TvwsSeries series,
                                   double *values,
                                   size_t capacity);

// # Safety
// `report` must be a handle from this library or NULL.
void tvws_report_free(struct TvwsReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TVWS_FCCA_H */
