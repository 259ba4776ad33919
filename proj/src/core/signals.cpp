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

#include "core/signals.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "core/engine.hpp"
#include "core/wav.hpp"

namespace wgabor {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kErrFloorDb = -200.0;
constexpr double kTargetRms = 0.1;

void normalize_rms(std::vector<double>& x, double target) {
  double acc = 0;
  for (double v : x) acc += v * v;
  const double rms = std::sqrt(acc / static_cast<double>(x.size()));
  if (rms <= 0) return;
  const double g = target / rms;
  for (double& v : x) v *= g;
}

}  // namespace

std::vector<double> gen_signal(const TestSignal& spec, const FrameSet* fs) {
  if (!(spec.duration > 0)) {
    throw std::invalid_argument("gen_signal: duration must be positive");
  }
  const auto n =
      static_cast<std::size_t>(std::llround(spec.duration * spec.sample_rate));
  std::vector<double> x(n, 0.0);

  if (spec.kind == "white") {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& v : x) v = dist(rng);
  } else if (spec.kind == "sine") {
    const double w = 2.0 * kPi * spec.freq / spec.sample_rate;
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(w * i);
  } else if (spec.kind == "const") {
    std::fill(x.begin(), x.end(), 1.0);
  } else if (spec.kind == "clicks") {
    const auto step =
        static_cast<std::size_t>(std::llround(spec.spacing * spec.sample_rate));
    if (step == 0) throw std::invalid_argument("gen_signal: bad click spacing");
    for (std::size_t i = 0; i < n; i += step) x[i] = 1.0;
  } else if (spec.kind == "atoms") {
    if (!fs) {
      throw std::invalid_argument(
          "gen_signal: 'atoms' needs an active frame set");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::int32_t> band(
        0, fs->params.q_sup - 1);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const auto margin = static_cast<std::int64_t>(
        std::llround(fs->params.T_max * spec.sample_rate));
    const auto len = static_cast<std::int64_t>(n);
    const auto count = std::max<std::int64_t>(
        1, std::llround(spec.density * spec.duration));
    std::uniform_real_distribution<double> pos(
        static_cast<double>(margin), static_cast<double>(len - margin));
    for (std::int64_t i = 0; i < count; ++i) {
      const std::int32_t q = band(rng);
      const FrameElement& e = fs->elements[static_cast<std::size_t>(q)];
      const std::int64_t center =
          (static_cast<std::int64_t>(pos(rng)) / e.n_q) * e.n_q;
      const double ph = phase(rng);
      const std::complex<double> c(std::cos(ph), std::sin(ph));
      const double w = band_weight(q, fs->params.q_sup);
      const auto alen = static_cast<std::int64_t>(e.samples.size());
      for (std::int64_t j = 0; j < alen; ++j) {
        const std::int64_t t = center - e.center_offset + j;
        if (t < 0 || t >= len) continue;
        const std::complex<double>& a = e.samples[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(t)] +=
            w * (c.real() * a.real() - c.imag() * a.imag());
      }
    }
  } else if (spec.kind == "wav") {
    WavData w = read_wav(spec.path);
    if (std::abs(w.sample_rate - spec.sample_rate) > 1e-9) {
      throw std::runtime_error("gen_signal: wav sample rate mismatch");
    }
    x = std::move(w.samples);
    if (x.empty()) throw std::runtime_error("gen_signal: empty wav file");
  } else {
    throw std::invalid_argument("gen_signal: unknown kind '" + spec.kind +
                                "'");
  }
  normalize_rms(x, kTargetRms);
  return x;
}

double measure_err(const std::vector<double>& input,
                   const std::vector<double>& output,
                   std::int64_t delay_samples, double t_max_s,
                   double sample_rate) {
  const auto trim =
      static_cast<std::int64_t>(std::llround(t_max_s * sample_rate));
  const auto len = static_cast<std::int64_t>(input.size());
  if (len - 2 * trim <= 0) {
    throw std::invalid_argument(
        "measure_err: signal shorter than twice the trim length (2*T_max)");
  }
  double res_acc = 0, in_acc = 0;
  for (std::int64_t t = trim; t < len - trim; ++t) {
    const std::int64_t to = t + delay_samples;
    const double o = (to >= 0 && to < static_cast<std::int64_t>(output.size()))
                         ? output[static_cast<std::size_t>(to)]
                         : 0.0;
    const double d = o - input[static_cast<std::size_t>(t)];
    res_acc += d * d;
    in_acc += input[static_cast<std::size_t>(t)] *
              input[static_cast<std::size_t>(t)];
  }
  if (res_acc <= 0) return kErrFloorDb;
  if (in_acc <= 0) return 200.0;
  const double err = 10.0 * std::log10(res_acc / in_acc);
  return std::max(err, kErrFloorDb);
}

namespace {

Config gaussian_preset_on(const Config& base) {
  Config c = base;
  c.window_kind = PrototypeWindow::Kind::Gaussian;
  c.window_T = 1.0 / 6.0;
  c.R = 4.0;
  c.K = 8.0;
  c.a = 0.0;
  c.C_b = 2.0;
  c.C_d = 2.0;
  c.C_cut = 1000.0;
  c.C_Tc = 3.0;
  c.T_max = 0.4;
  return c;
}

Config rcw_preset_on(const Config& base) {
  Config p = Config::raised_cosine_preset();
  Config c = base;
  c.window_kind = p.window_kind;
  c.window_T = p.window_T;
  c.R = p.R;
  c.K = p.K;
  c.a = p.a;
  c.C_b = p.C_b;
  c.C_d = p.C_d;
  c.C_cut = p.C_cut;
  c.C_Tc = p.C_Tc;
  c.T_max = p.T_max;
  return c;
}

SuiteRow describe_row(const Config& cfg, const FrameSet& fs) {
  SuiteRow row;
  row.R = fs.params.R;
  row.K = fs.params.K;
  row.b = fs.params.b;
  row.a = fs.params.a;
  row.q_sup = fs.params.q_sup;
  row.C_b = fs.params.C_b;
  row.C_d = fs.params.C_d;
  row.C_cut = fs.params.C_cut;
  row.T_max = fs.params.T_max;
  row.n_avg = estimate_cost(fs).n_avg;
  for (const FrameElement& e : fs.elements) row.sum_T_q += e.T_q;
  (void)cfg;
  return row;
}

SuiteRow run_row(const Config& cfg, const FrameSet& fs,
                 const TestSignal& spec, const std::string& label) {
  SuiteRow row = describe_row(cfg, fs);
  row.signal = label;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> x = gen_signal(spec, &fs);
  RoundTripResult rt = roundtrip(x, fs);
  row.err_db = measure_err(x, rt.output, rt.latency.delay_samples,
                           fs.params.T_max, fs.params.sample_rate);
  const auto t1 = std::chrono::steady_clock::now();
  row.wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return row;
}

void preset_rows(const Config& cfg, ErrorReport& report) {
  const FrameSet fs = build_frameset(cfg);
  TestSignal spec;
  spec.duration = cfg.suite_duration;
  spec.sample_rate = cfg.sr;
  spec.seed = cfg.suite_seed;

  struct Item {
    const char* label;
    const char* kind;
    double freq;
  };
  const Item items[] = {{"white", "white", 0},      {"sine 30", "sine", 30},
                        {"sine 440", "sine", 440},  {"sine 20k", "sine", 20000},
                        {"const", "const", 0},      {"clicks", "clicks", 0},
                        {"atom", "atoms", 0}};
  for (const Item& it : items) {
    spec.kind = it.kind;
    spec.freq = it.freq;
    report.rows.push_back(run_row(cfg, fs, spec, it.label));
  }

  const std::pair<const char*, const std::string*> wavs[] = {
      {"beet", &cfg.wav_beet}, {"speech", &cfg.wav_speech},
      {"fire", &cfg.wav_fire}};
  for (const auto& [label, path] : wavs) {
    if (path->empty()) {
      SuiteRow row = describe_row(cfg, fs);
      row.signal = label;
      row.skipped = true;
      row.note = "no wav supplied (set suite.wav." + std::string(label) + ")";
      report.rows.push_back(row);
    } else {
      spec.kind = "wav";
      spec.path = *path;
      report.rows.push_back(run_row(cfg, fs, spec, label));
    }
  }
}

}  // namespace

ErrorReport run_suite(const std::string& suite, const Config& base) {
  ErrorReport report;
  report.suite = suite;

  if (suite == "gaussian") {
    preset_rows(gaussian_preset_on(base), report);
  } else if (suite == "rcw") {
    preset_rows(rcw_preset_on(base), report);
  } else if (suite == "influence_R") {
    for (const double r : {2.0, 2.5, 3.0}) {
      Config cfg = gaussian_preset_on(base);
      cfg.a = 1.0 / 24.0;
      cfg.R = r;
      cfg.window_T = cfg.a * r;
      cfg.K = cfg.C_b * r;  // keeps BW = K b = 1/a fixed at 24 Hz
      cfg.C_d = 2.0;
      // Mild truncation so the R dependence (phase linearisation at the
      // essential-bandwidth edge) dominates the error, not the cut.
      cfg.C_cut = 1e4;
      cfg.T_max = 0.629;
      cfg.C_Tc = 2.0;
      const FrameSet fs = build_frameset(cfg);
      TestSignal spec;
      spec.kind = "white";
      spec.duration = cfg.suite_duration;
      spec.sample_rate = cfg.sr;
      spec.seed = cfg.suite_seed;
      std::ostringstream label;
      label << "white R=" << r;
      report.rows.push_back(run_row(cfg, fs, spec, label.str()));
    }
  } else if (suite == "Tc_sweep") {
    for (const bool gaussian : {false, true}) {
      Config preset = gaussian ? gaussian_preset_on(base) : rcw_preset_on(base);
      const ShiftParams s = derive_shifts(preset);
      const WarpMap map =
          WarpMap::exponential(preset.map_f0, preset.map_k, preset.sr, s.b);
      // T_c / T_h = C_Tc / theta'_inf, so this pins the ratio exactly.
      const double theta_inf = map.slope_lo();
      for (const double ratio :
           {1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.5, 5.0, 16.0}) {
        Config cfg = preset;
        cfg.C_Tc = ratio * theta_inf;
        const FrameSet fs = build_frameset(cfg);
        TestSignal spec;
        spec.kind = "white";
        spec.duration = cfg.suite_duration;
        spec.sample_rate = cfg.sr;
        spec.seed = cfg.suite_seed;
        std::ostringstream label;
        label << (gaussian ? "gaussian" : "rcw") << " Tc/Th=" << ratio;
        report.rows.push_back(run_row(cfg, fs, spec, label.str()));
      }
    }
  } else if (suite == "sumTq_sweep") {
    struct Sweep {
      bool gaussian;
      std::vector<double> cuts;
    };
    const Sweep sweeps[] = {
        {false, {5, 10, 20, 55, 150, 500, 5000}},
        {true, {10, 30, 100, 300, 1000, 1e4, 1e6}}};
    for (const Sweep& sw : sweeps) {
      for (const double cut : sw.cuts) {
        Config cfg =
            sw.gaussian ? gaussian_preset_on(base) : rcw_preset_on(base);
        cfg.C_cut = cut;
        const FrameSet fs = build_frameset(cfg);
        TestSignal spec;
        spec.kind = "white";
        spec.duration = cfg.suite_duration;
        spec.sample_rate = cfg.sr;
        spec.seed = cfg.suite_seed;
        std::ostringstream label;
        label << (sw.gaussian ? "gaussian" : "rcw") << " C_cut=" << cut;
        report.rows.push_back(run_row(cfg, fs, spec, label.str()));
      }
    }
  } else {
    throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
  }
  return report;
}

std::string ErrorReport::to_tsv() const {
  std::ostringstream os;
  os << "signal\terr_dB\tR\tK\tb\tq_sup\ta\tC_b\tC_d\tC_cut\tT_max\tN_avg\t"
        "wall_ms\n";
  for (const SuiteRow& r : rows) {
    os << r.signal << '\t';
    if (r.skipped) {
      os << "skipped";
    } else {
      os << std::fixed << std::setprecision(1) << r.err_db
         << std::defaultfloat << std::setprecision(6);
    }
    os << '\t' << r.R << '\t' << r.K << '\t' << r.b << '\t' << r.q_sup << '\t'
       << r.a << '\t' << r.C_b << '\t' << r.C_d << '\t' << r.C_cut << '\t'
       << r.T_max << '\t' << r.n_avg << '\t' << std::fixed
       << std::setprecision(1) << r.wall_ms << std::defaultfloat
       << std::setprecision(6) << '\n';
  }
  return os.str();
}

std::string ErrorReport::to_table() const {
  std::ostringstream os;
  os << "suite: " << suite << "\n";
  os << std::left << std::setw(22) << "signal" << std::right << std::setw(9)
     << "err dB" << std::setw(7) << "R" << std::setw(5) << "K" << std::setw(9)
     << "b Hz" << std::setw(7) << "q_sup" << std::setw(10) << "a s"
     << std::setw(9) << "C_cut" << std::setw(10) << "N_avg" << std::setw(10)
     << "wall ms" << "\n";
  for (const SuiteRow& r : rows) {
    os << std::left << std::setw(22) << r.signal << std::right;
    if (r.skipped) {
      os << std::setw(9) << "--";
    } else {
      os << std::setw(9) << std::fixed << std::setprecision(1) << r.err_db;
    }
    os << std::setw(7) << std::setprecision(2) << r.R << std::setw(5)
       << std::setprecision(0) << r.K << std::setw(9) << std::setprecision(3)
       << r.b << std::setw(7) << r.q_sup << std::setw(10)
       << std::setprecision(5) << r.a << std::setw(9) << std::setprecision(0)
       << r.C_cut << std::setw(10) << std::setprecision(0) << r.n_avg
       << std::setw(10) << std::setprecision(1) << r.wall_ms;
    if (r.skipped) os << "  (" << r.note << ")";
    os << "\n";
  }
  os << std::defaultfloat << std::setprecision(6);
  return os.str();
}

}  // namespace wgabor
