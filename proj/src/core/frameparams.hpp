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

#ifndef WGABOR_CORE_FRAMEPARAMS_HPP
#define WGABOR_CORE_FRAMEPARAMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/warpmap.hpp"
#include "core/window.hpp"

namespace wgabor {

/// All derived grid and sampling parameters. Immutable after derive();
/// safe for unrestricted concurrent reads.
struct FrameParams {
  double sample_rate = 0;
  double K = 0;        // essential-bandwidth multiple, BW = K * b
  double R = 0;        // overlap factor
  double a = 0;        // time shift (s)
  double b = 0;        // frequency shift (warped Hz)
  double BW = 0;       // essential bandwidth (warped Hz)
  std::int32_t q_sup = 0;  // number of bands

  // Per band q in [0, q_sup)
  std::vector<double> f_q;          // center frequency theta(q b), Hz
  std::vector<double> BW_q;         // warped essential bandwidth, Hz
  std::vector<std::int32_t> n_q;    // hop, samples (>= 1)
  std::vector<double> d_q;          // hop, seconds (n_q / SR)

  double C_b = 0, C_d = 0, C_cut = 0, C_Tc = 0;
  double T_max = 0;       // max atom length (s)
  double T_c = 0;         // precompute length (s)
  std::int64_t N_c = 0;   // precompute DFT length, power of two
  double theta_inf = 0;   // infimum of theta' over the analysis range
};

struct FrameConditionReport {
  bool ok = false;
  double ab_margin = 0;                 // 1 - a*b*K
  std::vector<double> dq_margins;       // 1 - d_q * BW_q per band
  std::string message;
};

// The b/a pre-step: a defaults to T/R, b = 1/(a R C_b). The warp map must be
// built with this b before calling derive().
struct ShiftParams {
  double a = 0;
  double b = 0;
};
ShiftParams derive_shifts(const Config& config);

// Derives the full parameter set; throws on frame-condition violations.
// Appends human-readable warnings (e.g. R != K) to *warnings if non-null.
FrameParams derive(const Config& config, const WarpMap& map,
                   const PrototypeWindow& window,
                   std::vector<std::string>* warnings = nullptr);

FrameConditionReport check_frame_conditions(const FrameParams& p);

}  // namespace wgabor

#endif  // WGABOR_CORE_FRAMEPARAMS_HPP
