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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "core/engine.hpp"
#include "core/signals.hpp"
#include "doctest.h"
#include "wgabor.h"

namespace {

// Shared cheap frameset (one build for the whole binary).
wg_frameset* test_frameset() {
  static wg_frameset* fs = [] {
    wg_config* c = nullptr;
    REQUIRE(wg_config_create(&c) == WG_OK);
    wg_frameset* f = nullptr;
    REQUIRE(wg_frameset_build(c, &f) == WG_OK);
    wg_config_destroy(c);
    return f;
  }();
  return fs;
}

}  // namespace

TEST_CASE("config lifecycle and key access") {
  wg_config* c = nullptr;
  REQUIRE(wg_config_create(&c) == WG_OK);
  char* v = nullptr;
  REQUIRE(wg_config_get(c, "R", &v) == WG_OK);
  CHECK(std::strcmp(v, "4") == 0);
  wg_free_string(v);

  CHECK(wg_config_set(c, "C_cut", "500") == WG_OK);
  REQUIRE(wg_config_get(c, "C_cut", &v) == WG_OK);
  CHECK(std::strcmp(v, "500") == 0);
  wg_free_string(v);

  CHECK(wg_config_set(c, "no_such_key", "1") == WG_INVALID_ARGUMENT);
  CHECK(std::strstr(wg_last_error(), "no_such_key") != nullptr);
  CHECK(wg_config_set(c, "R", "-3") == WG_INVALID_ARGUMENT);

  char* text = nullptr;
  REQUIRE(wg_config_serialize(c, &text) == WG_OK);
  CHECK(std::strstr(text, "C_cut = 500") != nullptr);
  wg_free_string(text);
  wg_config_destroy(c);

  wg_config* rc = nullptr;
  REQUIRE(wg_config_create_rcw(&rc) == WG_OK);
  REQUIRE(wg_config_get(rc, "window.kind", &v) == WG_OK);
  CHECK(std::strcmp(v, "raised-cosine") == 0);
  wg_free_string(v);
  wg_config_destroy(rc);
}

TEST_CASE("config file round trip") {
  const char* path = "test_capi.cfg";
  {
    wg_config* c = nullptr;
    REQUIRE(wg_config_create(&c) == WG_OK);
    REQUIRE(wg_config_set(c, "sr", "22050") == WG_OK);
    char* text = nullptr;
    REQUIRE(wg_config_serialize(c, &text) == WG_OK);
    std::FILE* f = std::fopen(path, "w");
    REQUIRE(f != nullptr);
    std::fputs(text, f);
    std::fclose(f);
    wg_free_string(text);
    wg_config_destroy(c);
  }
  wg_config* c = nullptr;
  REQUIRE(wg_config_load(path, &c) == WG_OK);
  char* v = nullptr;
  REQUIRE(wg_config_get(c, "sr", &v) == WG_OK);
  CHECK(std::strcmp(v, "22050") == 0);
  wg_free_string(v);
  wg_config_destroy(c);
  CHECK(wg_config_load("missing.cfg", &c) != WG_OK);
  std::remove(path);
}

TEST_CASE("frameset info and diagnostics") {
  wg_frameset* fs = test_frameset();
  wg_frameset_info info;
  REQUIRE(wg_frameset_info_get(fs, &info) == WG_OK);
  CHECK(info.sample_rate == 44100.0);
  CHECK(info.q_sup == 132);
  CHECK(info.b == doctest::Approx(3.0));
  CHECK(info.hash != 0);
  CHECK(info.n_avg > 0);
  CHECK(info.mem_min <= info.mem_improved);
  CHECK(info.mem_improved <= info.mem_precompute);
  CHECK(info.delay_samples == 0);

  char* desc = nullptr;
  REQUIRE(wg_frameset_describe(fs, &desc) == WG_OK);
  CHECK(std::strlen(desc) > 100);
  wg_free_string(desc);

  char* warn = nullptr;
  REQUIRE(wg_frameset_warnings(fs, &warn) == WG_OK);
  wg_free_string(warn);

  double dev = 0, ratio = 0;
  REQUIRE(wg_frameset_flatness(fs, &dev, &ratio) == WG_OK);
  CHECK(dev < 1e-6);
  CHECK(ratio < 1.0 + 1e-6);
}

TEST_CASE("atom access") {
  wg_frameset* fs = test_frameset();
  double* atom = nullptr;
  int64_t len = 0, center = 0;
  int32_t hop = 0;
  REQUIRE(wg_frameset_atom(fs, 20, &atom, &len, &center, &hop) == WG_OK);
  CHECK(len > 0);
  CHECK(center >= 0);
  CHECK(center < len);
  CHECK(hop >= 1);
  double peak = 0;
  for (int64_t i = 0; i < len; ++i) peak = std::max(peak, std::abs(atom[i]));
  CHECK(peak > 0);
  wg_free_buffer(atom);
  CHECK(wg_frameset_atom(fs, 100000, &atom, &len, &center, &hop) ==
        WG_INVALID_ARGUMENT);
}

TEST_CASE("analyze and synthesize parity with the core library") {
  wg_frameset* fs = test_frameset();
  double* x = nullptr;
  int64_t n = 0;
  REQUIRE(wg_gen_signal("white", 2.0, 44100.0, 9, 0.0, nullptr, nullptr, &x,
                        &n) == WG_OK);
  REQUIRE(n == 88200);

  wg_coeffs* co = nullptr;
  REQUIRE(wg_analyze(fs, x, n, &co) == WG_OK);
  int64_t in_len = 0;
  REQUIRE(wg_coeffs_input_length(co, &in_len) == WG_OK);
  CHECK(in_len == n);

  double* y = nullptr;
  int64_t yn = 0;
  REQUIRE(wg_synthesize(fs, co, &y, &yn) == WG_OK);
  REQUIRE(yn == n);

  double err = 0;
  REQUIRE(wg_measure_err(x, y, n, yn, 0, 0.4, 44100.0, &err) == WG_OK);
  CHECK(err < -60.0);

  // Must agree bit for bit with a direct run against the core library.
  const wgabor::FrameSet core_fs = wgabor::build_frameset(wgabor::Config());
  const std::vector<double> xv(x, x + n);
  const std::vector<double> want =
      wgabor::synthesize(wgabor::analyze(xv, core_fs), core_fs);
  CHECK(std::memcmp(y, want.data(), static_cast<std::size_t>(n) *
                                        sizeof(double)) == 0);

  wg_free_buffer(y);
  wg_coeffs_destroy(co);
  wg_free_buffer(x);
}

TEST_CASE("coefficient and frameset files through the C API") {
  wg_frameset* fs = test_frameset();
  const char* fs_path = "test_capi.wgf";
  const char* co_path = "test_capi.wgc";

  REQUIRE(wg_frameset_save(fs, fs_path) == WG_OK);
  wg_frameset* fs2 = nullptr;
  REQUIRE(wg_frameset_load(fs_path, &fs2) == WG_OK);
  wg_frameset_info a, b;
  REQUIRE(wg_frameset_info_get(fs, &a) == WG_OK);
  REQUIRE(wg_frameset_info_get(fs2, &b) == WG_OK);
  CHECK(a.hash == b.hash);

  double* x = nullptr;
  int64_t n = 0;
  REQUIRE(wg_gen_signal("sine", 1.0, 44100.0, 1, 440.0, nullptr, nullptr, &x,
                        &n) == WG_OK);
  wg_coeffs* co = nullptr;
  REQUIRE(wg_analyze(fs2, x, n, &co) == WG_OK);
  REQUIRE(wg_coeffs_save(co, co_path) == WG_OK);
  wg_coeffs* co2 = nullptr;
  REQUIRE(wg_coeffs_load(co_path, &co2) == WG_OK);
  uint64_t h1 = 0, h2 = 0;
  REQUIRE(wg_coeffs_hash(co, &h1) == WG_OK);
  REQUIRE(wg_coeffs_hash(co2, &h2) == WG_OK);
  CHECK(h1 == h2);
  CHECK(h1 == a.hash);

  wg_coeffs_destroy(co2);
  wg_coeffs_destroy(co);
  wg_free_buffer(x);
  wg_frameset_destroy(fs2);
  std::remove(fs_path);
  std::remove(co_path);

  wg_frameset* bad = nullptr;
  CHECK(wg_frameset_load("missing.wgf", &bad) == WG_IO_ERROR);
  wg_coeffs* badc = nullptr;
  CHECK(wg_coeffs_load("missing.wgc", &badc) == WG_IO_ERROR);
}

TEST_CASE("format errors are classified") {
  const char* path = "test_capi_junk.bin";
  {
    std::FILE* f = std::fopen(path, "wb");
    REQUIRE(f != nullptr);
    std::fputs("THIS IS NOT A VALID FILE AT ALL, PADDING PADDING", f);
    std::fclose(f);
  }
  wg_frameset* fs = nullptr;
  CHECK(wg_frameset_load(path, &fs) == WG_BAD_FORMAT);
  wg_coeffs* co = nullptr;
  CHECK(wg_coeffs_load(path, &co) == WG_BAD_FORMAT);
  std::remove(path);
}

TEST_CASE("null arguments are rejected, not crashed on") {
  CHECK(wg_config_create(nullptr) == WG_INVALID_ARGUMENT);
  CHECK(wg_frameset_build(nullptr, nullptr) == WG_INVALID_ARGUMENT);
  CHECK(wg_analyze(nullptr, nullptr, 0, nullptr) == WG_INVALID_ARGUMENT);
  CHECK(wg_last_error() != nullptr);
  double err = 0;
  CHECK(wg_measure_err(nullptr, nullptr, 10, 10, 0, 0.1, 44100.0, &err) ==
        WG_INVALID_ARGUMENT);
}

TEST_CASE("signal generation errors surface through the status") {
  double* x = nullptr;
  int64_t n = 0;
  CHECK(wg_gen_signal("nope", 1.0, 44100.0, 1, 0.0, nullptr, nullptr, &x,
                      &n) == WG_INVALID_ARGUMENT);
  CHECK(wg_gen_signal("atoms", 1.0, 44100.0, 1, 2.0, nullptr, nullptr, &x,
                      &n) == WG_INVALID_ARGUMENT);
}

TEST_CASE("benchmark suite through the C API") {
  wg_config* base = nullptr;
  REQUIRE(wg_config_create(&base) == WG_OK);
  REQUIRE(wg_config_set(base, "suite.duration", "2") == WG_OK);
  char* tsv = nullptr;
  char* table = nullptr;
  REQUIRE(wg_run_suite("influence_R", base, &tsv, &table) == WG_OK);
  CHECK(std::strstr(tsv, "err_dB") != nullptr);
  CHECK(std::strstr(tsv, "white R=2.5") != nullptr);
  CHECK(std::strstr(table, "suite: influence_R") != nullptr);
  wg_free_string(tsv);
  wg_free_string(table);
  CHECK(wg_run_suite("nope", base, &tsv, &table) == WG_INVALID_ARGUMENT);
  wg_config_destroy(base);
}

TEST_CASE("wav io through the C API") {
  const char* path = "test_capi.wav";
  double samples[64];
  for (int i = 0; i < 64; ++i) samples[i] = 0.25 * std::sin(0.2 * i);
  REQUIRE(wg_wav_write(path, samples, 64, 16000.0) == WG_OK);
  double* out = nullptr;
  int64_t n = 0;
  double rate = 0;
  int downmixed = 1;
  REQUIRE(wg_wav_read(path, &out, &n, &rate, &downmixed) == WG_OK);
  CHECK(n == 64);
  CHECK(rate == 16000.0);
  CHECK(downmixed == 0);
  for (int i = 0; i < 64; ++i) {
    CHECK(out[i] == doctest::Approx(samples[i]).epsilon(1e-6));
  }
  wg_free_buffer(out);
  std::remove(path);
  CHECK(wg_wav_read("missing.wav", &out, &n, &rate, &downmixed) ==
        WG_IO_ERROR);
}
