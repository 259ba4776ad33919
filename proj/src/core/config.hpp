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

#ifndef WGABOR_CORE_CONFIG_HPP
#define WGABOR_CORE_CONFIG_HPP

#include <string>

#include "core/window.hpp"

namespace wgabor {

/// Flat key=value engine configuration. Defaults are the Gaussian preset.
///
/// Keys: sr, window.kind, window.T, R, K, a, C_b, C_d, C_cut, C_Tc, T_max,
/// map.f0, map.k, suite.duration, suite.seed, cache.path,
/// suite.wav.beet, suite.wav.speech, suite.wav.fire.
struct Config {
  double sr = 44100.0;
  PrototypeWindow::Kind window_kind = PrototypeWindow::Kind::Gaussian;
  double window_T = 1.0 / 6.0;  // s
  double R = 4.0;
  double K = 8.0;
  double a = 0.0;  // s; 0 means "default to T/R"
  double C_b = 2.0;
  double C_d = 2.0;
  double C_cut = 1000.0;
  double C_Tc = 3.0;
  double T_max = 0.4;  // s
  double map_f0 = 12.0;
  double map_k = 36.0;
  double suite_duration = 5.0;  // s
  unsigned long long suite_seed = 1;
  std::string cache_path;
  std::string wav_beet, wav_speech, wav_fire;

  // Raised-cosine preset used by the benchmark suites: T = 7/24 s, R = 7,
  // K = 14, C_d = 4, C_cut = 100, T_max = 0.5.
  static Config raised_cosine_preset();

  // Throws std::invalid_argument on unknown keys or invalid values.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  static Config load(const std::string& path);
  static Config parse(const std::string& text);
  std::string serialize() const;
};

}  // namespace wgabor

#endif  // WGABOR_CORE_CONFIG_HPP
