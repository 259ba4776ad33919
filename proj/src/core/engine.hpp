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

#ifndef WGABOR_CORE_ENGINE_HPP
#define WGABOR_CORE_ENGINE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/framegen.hpp"

namespace wgabor {

/// Per-band complex coefficient sequence at the band's own hop. Frame n
/// corresponds to the atom centered at sample n * n_q; frames start at
/// first_frame (may be negative, covering the signal head).
struct BandCoeffs {
  std::int32_t q = 0;
  std::int32_t n_q = 1;
  std::int64_t first_frame = 0;
  std::vector<std::complex<double>> c;
};

struct CoefficientStream {
  double sample_rate = 0;
  std::int64_t input_length = 0;
  std::uint64_t frame_hash = 0;  // hash of the frame cache used
  std::vector<BandCoeffs> bands;  // materialized bands q >= 0 only
};

struct LatencyReport {
  // Centered (non-causal) atoms make the analysis-synthesis chain
  // delay-free; per-band alignment offsets are all zero by construction.
  std::int64_t delay_samples = 0;
  std::vector<std::int64_t> band_delay;
};

struct CostReport {
  double n_avg = 0;         // model: sum_q 4 L_q / n_q, flops per sample
  double worst_frame = 0;   // model: sum_q 4 L_q, flops in the worst frame
  double mem_cells_precompute = 0;  // 2 * q_sup * L_0
  double mem_cells_improved = 0;    // L_0 + sum_q L_q
  double mem_cells_min = 0;         // sum_q L_q
};

struct FlatnessReport {
  double max_deviation = 0;  // max |D(f) - 1|
  double d_min = 0;
  double d_max = 0;
  double bound_ratio = 0;    // d_max / d_min
};

/// Streaming analyzer. push() accepts arbitrary block sizes; the resulting
/// stream is bit-identical to one-shot analysis. Coefficients are computed
/// eagerly once their atom support is fully covered by pushed samples.
class Analyzer {
 public:
  explicit Analyzer(const FrameSet& fs);
  void push(std::span<const double> block);
  CoefficientStream finalize();
  // Multiply-accumulate flop tally (4 per complex MAC), for the cost model.
  std::uint64_t flops() const { return flops_; }

 private:
  void compute_ready(bool at_end);

  const FrameSet& fs_;
  std::vector<double> signal_;
  CoefficientStream out_;
  std::vector<std::int64_t> next_frame_;  // per band, next frame to compute
  std::vector<std::int64_t> first_frame_;
  std::vector<std::int64_t> frames_done_;
  std::uint64_t flops_ = 0;
  bool finalized_ = false;
};

/// Streaming synthesizer. pull() fills arbitrary-size blocks; output is
/// bit-identical for any pull pattern (contributions are always summed in
/// band-major, then frame order per sample).
class Synthesizer {
 public:
  Synthesizer(const CoefficientStream& coeffs, const FrameSet& fs);
  // Fills out with the next samples; returns the count actually produced
  // (short only at the end of the stream).
  std::size_t pull(std::span<double> out);
  std::int64_t output_length() const { return length_; }

 private:
  void render(std::int64_t start, std::span<double> out) const;

  const CoefficientStream& coeffs_;
  const FrameSet& fs_;
  std::int64_t length_ = 0;
  std::int64_t position_ = 0;
};

// Synthesis weight folding the implicit negative bands into q >= 0. Band 0
// (centered at DC) and the top band (centered exactly at Nyquist, made
// self-mirrored by the +-SR periodization) are their own conjugates.
inline double band_weight(std::int32_t q, std::int32_t q_sup) {
  return (q == 0 || q == q_sup - 1) ? 1.0 : 2.0;
}

CoefficientStream analyze(std::span<const double> signal, const FrameSet& fs,
                          std::uint64_t* flops = nullptr);
std::vector<double> synthesize(const CoefficientStream& coeffs,
                               const FrameSet& fs);

struct RoundTripResult {
  std::vector<double> output;
  LatencyReport latency;
  std::uint64_t analysis_flops = 0;
};
RoundTripResult roundtrip(std::span<const double> signal, const FrameSet& fs);

CostReport estimate_cost(const FrameSet& fs);

// Frame-operator flatness D(f) on a dense grid over [0, SR/2].
FlatnessReport pr_diagnostic(const FrameSet& fs, int grid_points = 1 << 14);

// Coefficient file ("WGC1", little-endian).
void save_coeffs(const CoefficientStream& cs, const std::string& path);
CoefficientStream load_coeffs(const std::string& path);

}  // namespace wgabor

#endif  // WGABOR_CORE_ENGINE_HPP
