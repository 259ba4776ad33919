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

// Command line front end. Deliberately uses only the public C interface.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wgabor.h"

namespace {

struct ConfigDeleter {
  void operator()(wg_config* p) const { wg_config_destroy(p); }
};
struct FramesetDeleter {
  void operator()(wg_frameset* p) const { wg_frameset_destroy(p); }
};
struct CoeffsDeleter {
  void operator()(wg_coeffs* p) const { wg_coeffs_destroy(p); }
};
using ConfigPtr = std::unique_ptr<wg_config, ConfigDeleter>;
using FramesetPtr = std::unique_ptr<wg_frameset, FramesetDeleter>;
using CoeffsPtr = std::unique_ptr<wg_coeffs, CoeffsDeleter>;

struct StringOut {
  char* p = nullptr;
  ~StringOut() { wg_free_string(p); }
};
struct BufferOut {
  double* p = nullptr;
  ~BufferOut() { wg_free_buffer(p); }
};

[[noreturn]] void die(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(1);
}

void check(wg_status st, const std::string& context) {
  if (st != WG_OK) die(context + ": " + wg_last_error());
}

struct Options {
  std::string config, cache, in, out, suite;
  double duration = 0;  // 0: keep config default
  std::uint64_t seed = 0;
  bool seed_set = false;
  int band = -1;
};

ConfigPtr load_config(const Options& opt) {
  wg_config* c = nullptr;
  if (!opt.config.empty()) {
    check(wg_config_load(opt.config.c_str(), &c), "loading config");
  } else {
    check(wg_config_create(&c), "creating config");
  }
  ConfigPtr cfg(c);
  if (opt.duration > 0) {
    check(wg_config_set(cfg.get(), "suite.duration",
                        std::to_string(opt.duration).c_str()),
          "setting duration");
  }
  if (opt.seed_set) {
    check(wg_config_set(cfg.get(), "suite.seed",
                        std::to_string(opt.seed).c_str()),
          "setting seed");
  }
  return cfg;
}

// Cache wins when present; otherwise the frame set is built from the config.
FramesetPtr load_frameset(const Options& opt) {
  wg_frameset* fs = nullptr;
  if (!opt.cache.empty() && std::ifstream(opt.cache).good()) {
    check(wg_frameset_load(opt.cache.c_str(), &fs), "loading cache");
    return FramesetPtr(fs);
  }
  ConfigPtr cfg = load_config(opt);
  check(wg_frameset_build(cfg.get(), &fs), "building frames");
  return FramesetPtr(fs);
}

void print_warnings(const wg_frameset* fs) {
  StringOut w;
  if (wg_frameset_warnings(fs, &w.p) == WG_OK && w.p && w.p[0]) {
    std::cerr << w.p;
  }
}

int cmd_build(const Options& opt) {
  if (opt.cache.empty()) die("build needs --cache (output path)");
  ConfigPtr cfg = load_config(opt);
  wg_frameset* raw = nullptr;
  check(wg_frameset_build(cfg.get(), &raw), "building frames");
  FramesetPtr fs(raw);
  print_warnings(fs.get());
  check(wg_frameset_save(fs.get(), opt.cache.c_str()), "writing cache");
  wg_frameset_info info;
  check(wg_frameset_info_get(fs.get(), &info), "reading info");
  std::printf("q_sup=%d N_avg=%.0f flops/sample memory=%llu bytes hash=%llx\n",
              info.q_sup, info.n_avg,
              static_cast<unsigned long long>(info.memory_bytes),
              static_cast<unsigned long long>(info.hash));
  std::printf("cache written to %s\n", opt.cache.c_str());
  return 0;
}

int cmd_roundtrip(const Options& opt) {
  if (opt.in.empty() || opt.out.empty()) die("roundtrip needs --in and --out");
  FramesetPtr fs = load_frameset(opt);
  print_warnings(fs.get());
  wg_frameset_info info;
  check(wg_frameset_info_get(fs.get(), &info), "reading info");

  BufferOut x;
  std::int64_t n = 0;
  double rate = 0;
  int downmixed = 0;
  check(wg_wav_read(opt.in.c_str(), &x.p, &n, &rate, &downmixed),
        "reading input");
  if (downmixed) std::cerr << "warning: stereo input downmixed to mono\n";
  if (std::abs(rate - info.sample_rate) > 1e-9) {
    std::cerr << "error: wav sample rate " << rate
              << " does not match frame set rate " << info.sample_rate << "\n";
    return 1;
  }

  wg_coeffs* craw = nullptr;
  check(wg_analyze(fs.get(), x.p, n, &craw), "analysis");
  CoeffsPtr coeffs(craw);
  BufferOut y;
  std::int64_t m = 0;
  check(wg_synthesize(fs.get(), coeffs.get(), &y.p, &m), "synthesis");
  check(wg_wav_write(opt.out.c_str(), y.p, m, rate), "writing output");

  double err = 0;
  check(wg_measure_err(x.p, y.p, n, m, info.delay_samples, info.T_max,
                       info.sample_rate, &err),
        "measuring error");
  std::printf("delay_samples=%lld err=%.1f dB\n",
              static_cast<long long>(info.delay_samples), err);
  return 0;
}

int cmd_analyze(const Options& opt) {
  if (opt.in.empty() || opt.out.empty()) die("analyze needs --in and --out");
  FramesetPtr fs = load_frameset(opt);
  wg_frameset_info info;
  check(wg_frameset_info_get(fs.get(), &info), "reading info");
  BufferOut x;
  std::int64_t n = 0;
  double rate = 0;
  int downmixed = 0;
  check(wg_wav_read(opt.in.c_str(), &x.p, &n, &rate, &downmixed),
        "reading input");
  if (downmixed) std::cerr << "warning: stereo input downmixed to mono\n";
  if (std::abs(rate - info.sample_rate) > 1e-9) {
    std::cerr << "error: wav sample rate " << rate
              << " does not match frame set rate " << info.sample_rate << "\n";
    return 1;
  }
  wg_coeffs* craw = nullptr;
  check(wg_analyze(fs.get(), x.p, n, &craw), "analysis");
  CoeffsPtr coeffs(craw);
  check(wg_coeffs_save(coeffs.get(), opt.out.c_str()), "writing coefficients");
  std::printf("coefficients written to %s\n", opt.out.c_str());
  return 0;
}

int cmd_synthesize(const Options& opt) {
  if (opt.in.empty() || opt.out.empty()) die("synthesize needs --in and --out");
  FramesetPtr fs = load_frameset(opt);
  wg_frameset_info info;
  check(wg_frameset_info_get(fs.get(), &info), "reading info");
  wg_coeffs* craw = nullptr;
  check(wg_coeffs_load(opt.in.c_str(), &craw), "reading coefficients");
  CoeffsPtr coeffs(craw);
  BufferOut y;
  std::int64_t m = 0;
  check(wg_synthesize(fs.get(), coeffs.get(), &y.p, &m), "synthesis");
  check(wg_wav_write(opt.out.c_str(), y.p, m, info.sample_rate),
        "writing output");
  std::printf("audio written to %s\n", opt.out.c_str());
  return 0;
}

int cmd_bench(const Options& opt) {
  if (opt.suite.empty()) die("bench needs --suite");
  ConfigPtr cfg = load_config(opt);
  StringOut tsv, table;
  check(wg_run_suite(opt.suite.c_str(), cfg.get(), &tsv.p, &table.p),
        "running suite");
  std::fputs(table.p, stdout);
  if (!opt.out.empty()) {
    std::ofstream os(opt.out);
    if (!os) die("opening --out");
    os << tsv.p;
    std::printf("tsv written to %s\n", opt.out.c_str());
  }
  return 0;
}

int cmd_info(const Options& opt) {
  FramesetPtr fs = load_frameset(opt);
  print_warnings(fs.get());
  StringOut text;
  check(wg_frameset_describe(fs.get(), &text.p), "describing frames");
  std::fputs(text.p, stdout);
  double dev = 0, ratio = 0;
  check(wg_frameset_flatness(fs.get(), &dev, &ratio), "flatness scan");
  std::printf("flatness: max |D(f)-1| = %.3e, bound ratio = %.9f\n", dev,
              ratio);
  return 0;
}

int cmd_atoms(const Options& opt) {
  if (opt.band < 0 || opt.out.empty()) die("atoms needs --band and --out");
  FramesetPtr fs = load_frameset(opt);
  wg_frameset_info info;
  check(wg_frameset_info_get(fs.get(), &info), "reading info");
  BufferOut atom;
  std::int64_t len = 0, center = 0;
  std::int32_t hop = 0;
  check(wg_frameset_atom(fs.get(), opt.band, &atom.p, &len, &center, &hop),
        "fetching atom");
  check(wg_wav_write(opt.out.c_str(), atom.p, len, info.sample_rate),
        "writing output");
  std::printf("band %d: %lld samples, center %lld, hop %d -> %s\n", opt.band,
              static_cast<long long>(len), static_cast<long long>(center), hop,
              opt.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Warped Gabor frame analysis/synthesis tool"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "key=value config file");
    sub->add_option("--cache", opt.cache, "frame cache file");
    sub->add_option("--in", opt.in, "input file");
    sub->add_option("--out", opt.out, "output file");
    sub->add_option("--suite", opt.suite,
                    "rcw|gaussian|influence_R|Tc_sweep|sumTq_sweep");
    sub->add_option("--duration", opt.duration, "suite signal duration (s)");
    sub->add_option("--seed", opt.seed, "suite RNG seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    sub->add_option("--band", opt.band, "band index q");
    return sub;
  };

  auto* build = add_common(app.add_subcommand(
      "build", "derive parameters, precompute atoms, write cache"));
  auto* roundtrip = add_common(app.add_subcommand(
      "roundtrip", "analyze and resynthesize a WAV, print err"));
  auto* analyze = add_common(
      app.add_subcommand("analyze", "WAV to coefficient file"));
  auto* synthesize = add_common(
      app.add_subcommand("synthesize", "coefficient file to WAV"));
  auto* bench = add_common(
      app.add_subcommand("bench", "run a benchmark suite, print the table"));
  auto* info = add_common(
      app.add_subcommand("info", "print all derived parameters and costs"));
  auto* atoms = add_common(
      app.add_subcommand("atoms", "dump one band's atom (real part) as WAV"));

  CLI11_PARSE(app, argc, argv);

  if (build->parsed()) return cmd_build(opt);
  if (roundtrip->parsed()) return cmd_roundtrip(opt);
  if (analyze->parsed()) return cmd_analyze(opt);
  if (synthesize->parsed()) return cmd_synthesize(opt);
  if (bench->parsed()) return cmd_bench(opt);
  if (info->parsed()) return cmd_info(opt);
  if (atoms->parsed()) return cmd_atoms(opt);
  return 1;
}
