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

#ifndef WGABOR_CORE_FRAMEGEN_HPP
#define WGABOR_CORE_FRAMEGEN_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "core/frameparams.hpp"
#include "core/warpmap.hpp"
#include "core/window.hpp"

namespace wgabor {

/// One truncated complex time-domain atom. Samples hold only the surviving
/// support; center_offset indexes the alignment center inside samples.
struct FrameElement {
  std::int32_t q = 0;
  std::vector<std::complex<double>> samples;
  std::int64_t center_offset = 0;
  std::int32_t n_q = 1;          // hop, samples
  double T_q = 0;                // truncated length, s
  double energy = 0;             // sum of squared magnitudes
  double trunc_loss = 0;         // fraction of energy removed by truncation
};

/// Precomputed atom cache. Immutable after build; atoms for n != 0 are
/// realized by integer hop shifts at analysis/synthesis time.
struct FrameSet {
  FrameParams params;
  WarpMap map = WarpMap::identity(2, 1);
  PrototypeWindow window = PrototypeWindow::gaussian(1, 1, 2);
  std::vector<FrameElement> elements;
  std::uint64_t total_memory = 0;  // bytes of stored complex samples
  std::uint64_t hash = 0;          // content hash, embedded in coeff files
  std::vector<std::string> warnings;
};

// Band spectrum on the length-N DFT grid (bin m holds frequency
// m*SR/N, wrapped to [-SR/2, SR/2)), with +-SR periodization so content
// beyond Nyquist folds back smoothly. q may be negative (mirror bands).
std::vector<double> band_spectrum(std::int32_t q, std::int64_t n_fft,
                                  const FrameParams& p, const WarpMap& map,
                                  const PrototypeWindow& w);

// Full-buffer zero-phase atom, rotated so its magnitude peak sits at the
// buffer center. Not yet truncated.
FrameElement generate_atom(std::int32_t q, const FrameParams& p,
                           const WarpMap& map, const PrototypeWindow& w,
                           std::vector<std::string>* warnings = nullptr);

// Outward scan from the center at max/C_cut, then clip to T_max seconds.
FrameElement truncate_atom(FrameElement e, double C_cut, double T_max,
                           double sample_rate,
                           std::vector<std::string>* warnings = nullptr);

FrameSet build_frameset(const FrameParams& p, const WarpMap& map,
                        const PrototypeWindow& w);

// Convenience: window + shifts + map + derive + build from a config.
FrameSet build_frameset(const Config& config);

// Binary cache ("WGF1", little-endian). Reload is bit-exact.
void save_frameset(const FrameSet& fs, const std::string& path);
FrameSet load_frameset(const std::string& path);

}  // namespace wgabor

#endif  // WGABOR_CORE_FRAMEGEN_HPP
