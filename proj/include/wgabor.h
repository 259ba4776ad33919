/* Copyright 2026 The wgabor authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the warped Gabor analysis/synthesis engine.
 *
 * All functions return wg_status; out parameters are written only on
 * WG_OK. wg_last_error() describes the most recent failure on the
 * calling thread. Strings and buffers returned through out parameters
 * are owned by the caller and released with wg_free_string /
 * wg_free_buffer. Handles are opaque and freed with their destructors.
 */

#ifndef WGABOR_H
#define WGABOR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wg_status {
  WG_OK = 0,
  WG_INVALID_ARGUMENT = 1,
  WG_IO_ERROR = 2,
  WG_BAD_FORMAT = 3,
  WG_FAILED = 4
} wg_status;

typedef struct wg_config wg_config;
typedef struct wg_frameset wg_frameset;
typedef struct wg_coeffs wg_coeffs;

/* Thread-local message for the last failing call; never NULL. */
const char* wg_last_error(void);

void wg_free_string(char* s);
void wg_free_buffer(double* p);

/* ---- configuration ---- */

wg_status wg_config_create(wg_config** out);               /* gaussian preset */
wg_status wg_config_create_rcw(wg_config** out);           /* raised cosine  */
wg_status wg_config_load(const char* path, wg_config** out);
wg_status wg_config_set(wg_config* c, const char* key, const char* value);
wg_status wg_config_get(const wg_config* c, const char* key, char** out);
wg_status wg_config_serialize(const wg_config* c, char** out);
void wg_config_destroy(wg_config* c);

/* ---- frame set (precomputed atom cache) ---- */

wg_status wg_frameset_build(const wg_config* c, wg_frameset** out);
wg_status wg_frameset_save(const wg_frameset* fs, const char* path);
wg_status wg_frameset_load(const char* path, wg_frameset** out);
void wg_frameset_destroy(wg_frameset* fs);

typedef struct wg_frameset_info {
  double sample_rate;
  double a, b, BW, K, R;
  int32_t q_sup;
  double C_b, C_d, C_cut, C_Tc, T_max, T_c;
  int64_t N_c;
  double theta_inf;
  uint64_t hash;
  uint64_t memory_bytes;
  /* cost model, flops per sample and memory bounds in complex cells */
  double n_avg;
  double mem_precompute, mem_improved, mem_min;
  int64_t delay_samples;
} wg_frameset_info;

wg_status wg_frameset_info_get(const wg_frameset* fs, wg_frameset_info* out);

/* Human-readable multi-line parameter dump (all per-band fields). */
wg_status wg_frameset_describe(const wg_frameset* fs, char** out);

/* Warnings accumulated while building, one per line ("" when none). */
wg_status wg_frameset_warnings(const wg_frameset* fs, char** out);

/* Real part of band q's atom; *out has *out_len samples, center at
 * *out_center. q in [0, q_sup). */
wg_status wg_frameset_atom(const wg_frameset* fs, int32_t q, double** out,
                           int64_t* out_len, int64_t* out_center,
                           int32_t* out_hop);

/* Frame-operator flatness D(f) scan over [0, SR/2]. */
wg_status wg_frameset_flatness(const wg_frameset* fs, double* max_deviation,
                               double* bound_ratio);

/* ---- analysis / synthesis ---- */

wg_status wg_analyze(const wg_frameset* fs, const double* signal, int64_t len,
                     wg_coeffs** out);
wg_status wg_synthesize(const wg_frameset* fs, const wg_coeffs* c,
                        double** out, int64_t* out_len);
wg_status wg_coeffs_save(const wg_coeffs* c, const char* path);
wg_status wg_coeffs_load(const char* path, wg_coeffs** out);
wg_status wg_coeffs_input_length(const wg_coeffs* c, int64_t* out);
wg_status wg_coeffs_hash(const wg_coeffs* c, uint64_t* out);
void wg_coeffs_destroy(wg_coeffs* c);

/* ---- signals and benchmarks ---- */

/* kind: "white" | "sine" | "const" | "clicks" | "atoms" | "wav".
 * param is the frequency (sine), spacing (clicks) or density (atoms);
 * path applies to "wav" only; fs is required for "atoms" (else NULL). */
wg_status wg_gen_signal(const char* kind, double duration, double sample_rate,
                        uint64_t seed, double param, const char* path,
                        const wg_frameset* fs, double** out, int64_t* out_len);

/* Round-trip residual in dB after delay alignment and T_max edge trim. */
wg_status wg_measure_err(const double* input, const double* output,
                         int64_t len, int64_t out_len, int64_t delay_samples,
                         double t_max_s, double sample_rate, double* out_db);

/* suite: "rcw" | "gaussian" | "influence_R" | "Tc_sweep" | "sumTq_sweep".
 * Emits the machine table (TSV) and the formatted table. */
wg_status wg_run_suite(const char* suite, const wg_config* base, char** out_tsv,
                       char** out_table);

/* ---- WAV I/O (PCM 16/24, float 32/64; stereo downmixed) ---- */

wg_status wg_wav_read(const char* path, double** out, int64_t* out_len,
                      double* out_rate, int* out_downmixed);
wg_status wg_wav_write(const char* path, const double* samples, int64_t len,
                       double sample_rate);

#ifdef __cplusplus
}
#endif

#endif /* WGABOR_H */
