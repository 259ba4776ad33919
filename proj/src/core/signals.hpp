// Copyright 2026 The wgabor authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WGABOR_CORE_SIGNALS_HPP
#define WGABOR_CORE_SIGNALS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/framegen.hpp"

namespace wgabor {

/// Synthetic test signal description. Deterministic given (kind, duration,
/// SR, seed); generated signals are normalized to RMS 0.1.
struct TestSignal {
  // "white", "sine" (uses freq), "const", "clicks" (uses spacing),
  // "atoms" (uses density and the frame set), "wav" (uses path).
  std::string kind = "white";
  double duration = 5.0;       // s
  double sample_rate = 44100;  // Hz
  std::uint64_t seed = 1;
  double freq = 440;           // Hz, sine only
  double spacing = 1.0;        // s, clicks only
  double density = 2.0;        // atoms per second, atoms only
  std::string path;            // wav only
};

// The frame set is required only for kind == "atoms".
std::vector<double> gen_signal(const TestSignal& spec,
                               const FrameSet* fs = nullptr);

// Negative SNR of the round-trip residual in dB. Both sequences are trimmed
// by T_max seconds at each end after delay alignment; exact-zero residual is
// floored at -200 dB.
double measure_err(const std::vector<double>& input,
                   const std::vector<double>& output,
                   std::int64_t delay_samples, double t_max_s,
                   double sample_rate);

struct SuiteRow {
  std::string signal;
  bool skipped = false;
  std::string note;
  double err_db = 0;
  double R = 0, K = 0, b = 0, a = 0;
  std::int32_t q_sup = 0;
  double C_b = 0, C_d = 0, C_cut = 0, T_max = 0;
  double n_avg = 0;       // cost model, flops per sample
  double sum_T_q = 0;     // s
  double wall_ms = 0;
};

struct ErrorReport {
  std::string suite;
  std::vector<SuiteRow> rows;
  std::string to_tsv() const;
  std::string to_table() const;
};

// Suites: rcw, gaussian, influence_R, Tc_sweep, sumTq_sweep.
// base supplies SR, map parameters, duration and seed; the suite overrides
// window/grid parameters per row as needed.
ErrorReport run_suite(const std::string& suite, const Config& base);

}  // namespace wgabor

#endif  // WGABOR_CORE_SIGNALS_HPP
