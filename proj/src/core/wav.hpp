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

#ifndef WGABOR_CORE_WAV_HPP
#define WGABOR_CORE_WAV_HPP

#include <string>
#include <vector>

namespace wgabor {

struct WavData {
  double sample_rate = 0;
  std::vector<double> samples;  // mono
  bool downmixed = false;       // true when a stereo file was averaged
};

// Reads PCM 16/24-bit and IEEE float 32/64-bit RIFF files. Stereo input is
// downmixed to mono (flagged in the result); other channel counts fail.
WavData read_wav(const std::string& path);

// Writes mono IEEE float 32-bit.
void write_wav(const std::string& path, const std::vector<double>& samples,
               double sample_rate);

}  // namespace wgabor

#endif  // WGABOR_CORE_WAV_HPP
