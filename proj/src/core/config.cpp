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

#include "core/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wgabor {

namespace {

double parse_positive(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key +
                                ": '" + value + "'");
  }
  if (pos != value.size()) {
    throw std::invalid_argument("config: trailing junk in value for " + key);
  }
  if (!(v > 0)) {
    throw std::invalid_argument("config: " + key + " must be positive, got " +
                                value);
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::raised_cosine_preset() {
  Config c;
  c.window_kind = PrototypeWindow::Kind::RaisedCosine;
  // T = a*R with a = 1/24 s; this yields b = 1.714 Hz and 229 bands.
  c.window_T = 7.0 / 24.0;
  c.a = 1.0 / 24.0;
  c.R = 7.0;
  c.K = 14.0;
  c.C_d = 4.0;
  // A cut below 100 puts the truncation floor right at the warp-seam error
  // level and masks the low-frequency sensitivity this preset should show.
  c.C_cut = 100.0;
  c.T_max = 0.5;
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  if (key == "sr") {
    sr = parse_positive(key, value);
  } else if (key == "window.kind") {
    if (value == "gaussian") {
      window_kind = PrototypeWindow::Kind::Gaussian;
    } else if (value == "raised-cosine" || value == "raised_cosine" ||
               value == "rcw") {
      window_kind = PrototypeWindow::Kind::RaisedCosine;
    } else {
      throw std::invalid_argument(
          "config: window.kind must be 'gaussian' or 'raised-cosine'");
    }
  } else if (key == "window.T") {
    window_T = parse_positive(key, value);
  } else if (key == "R") {
    R = parse_positive(key, value);
  } else if (key == "K") {
    K = parse_positive(key, value);
  } else if (key == "a") {
    a = parse_positive(key, value);
  } else if (key == "C_b") {
    C_b = parse_positive(key, value);
  } else if (key == "C_d") {
    C_d = parse_positive(key, value);
  } else if (key == "C_cut") {
    C_cut = parse_positive(key, value);
  } else if (key == "C_Tc") {
    C_Tc = parse_positive(key, value);
  } else if (key == "T_max") {
    T_max = parse_positive(key, value);
  } else if (key == "map.f0") {
    map_f0 = parse_positive(key, value);
  } else if (key == "map.k") {
    map_k = parse_positive(key, value);
  } else if (key == "suite.duration") {
    suite_duration = parse_positive(key, value);
  } else if (key == "suite.seed") {
    suite_seed = std::stoull(value);
  } else if (key == "cache.path") {
    cache_path = value;
  } else if (key == "suite.wav.beet") {
    wav_beet = value;
  } else if (key == "suite.wav.speech") {
    wav_speech = value;
  } else if (key == "suite.wav.fire") {
    wav_fire = value;
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

std::string Config::get(const std::string& key) const {
  std::ostringstream os;
  os.precision(17);
  if (key == "sr") os << sr;
  else if (key == "window.kind")
    os << (window_kind == PrototypeWindow::Kind::Gaussian ? "gaussian"
                                                          : "raised-cosine");
  else if (key == "window.T") os << window_T;
  else if (key == "R") os << R;
  else if (key == "K") os << K;
  else if (key == "a") os << a;
  else if (key == "C_b") os << C_b;
  else if (key == "C_d") os << C_d;
  else if (key == "C_cut") os << C_cut;
  else if (key == "C_Tc") os << C_Tc;
  else if (key == "T_max") os << T_max;
  else if (key == "map.f0") os << map_f0;
  else if (key == "map.k") os << map_k;
  else if (key == "suite.duration") os << suite_duration;
  else if (key == "suite.seed") os << suite_seed;
  else if (key == "cache.path") os << cache_path;
  else if (key == "suite.wav.beet") os << wav_beet;
  else if (key == "suite.wav.speech") os << wav_speech;
  else if (key == "suite.wav.fire") os << wav_fire;
  else
    throw std::invalid_argument("config: unknown key '" + key + "'");
  return os.str();
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value");
    }
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse(os.str());
}

std::string Config::serialize() const {
  static const char* keys[] = {
      "sr",    "window.kind", "window.T", "R",       "K",
      "a",     "C_b",         "C_d",      "C_cut",   "C_Tc",
      "T_max", "map.f0",      "map.k",    "suite.duration", "suite.seed",
      "cache.path", "suite.wav.beet", "suite.wav.speech", "suite.wav.fire"};
  std::ostringstream os;
  for (const char* k : keys) {
    if (std::string(k) == "a" && a == 0.0) continue;  // unset, defaults to T/R
    os << k << " = " << get(k) << "\n";
  }
  return os.str();
}

}  // namespace wgabor
