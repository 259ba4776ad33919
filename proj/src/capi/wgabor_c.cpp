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

#include "wgabor.h"

#include <cstring>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "core/config.hpp"
#include "core/engine.hpp"
#include "core/framegen.hpp"
#include "core/signals.hpp"
#include "core/wav.hpp"

namespace {

thread_local std::string g_last_error = "ok";

struct BadFormat : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exceptions never cross the C boundary.
template <typename Fn>
wg_status guarded(Fn&& fn) {
  try {
    fn();
    return WG_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return WG_INVALID_ARGUMENT;
  } catch (const BadFormat& e) {
    g_last_error = e.what();
    return WG_BAD_FORMAT;
  } catch (const std::runtime_error& e) {
    g_last_error = e.what();
    const std::string msg = e.what();
    if (msg.find("magic") != std::string::npos ||
        msg.find("format") != std::string::npos ||
        msg.find("hash") != std::string::npos) {
      return WG_BAD_FORMAT;
    }
    if (msg.find("open") != std::string::npos ||
        msg.find("read") != std::string::npos ||
        msg.find("write") != std::string::npos ||
        msg.find("truncated file") != std::string::npos) {
      return WG_IO_ERROR;
    }
    return WG_FAILED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WG_FAILED;
  }
}

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

char* dup_string(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

double* dup_buffer(const double* src, std::size_t n) {
  auto* p = new double[n];
  std::memcpy(p, src, n * sizeof(double));
  return p;
}

}  // namespace

struct wg_config {
  wgabor::Config impl;
};
struct wg_frameset {
  wgabor::FrameSet impl;
};
struct wg_coeffs {
  wgabor::CoefficientStream impl;
};

extern "C" {

const char* wg_last_error(void) { return g_last_error.c_str(); }

void wg_free_string(char* s) { delete[] s; }
void wg_free_buffer(double* p) { delete[] p; }

wg_status wg_config_create(wg_config** out) {
  return guarded([&] {
    require(out, "out is null");
    *out = new wg_config{};
  });
}

wg_status wg_config_create_rcw(wg_config** out) {
  return guarded([&] {
    require(out, "out is null");
    *out = new wg_config{wgabor::Config::raised_cosine_preset()};
  });
}

wg_status wg_config_load(const char* path, wg_config** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new wg_config{wgabor::Config::load(path)};
  });
}

wg_status wg_config_set(wg_config* c, const char* key, const char* value) {
  return guarded([&] {
    require(c && key && value, "null argument");
    c->impl.set(key, value);
  });
}

wg_status wg_config_get(const wg_config* c, const char* key, char** out) {
  return guarded([&] {
    require(c && key && out, "null argument");
    *out = dup_string(c->impl.get(key));
  });
}

wg_status wg_config_serialize(const wg_config* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup_string(c->impl.serialize());
  });
}

void wg_config_destroy(wg_config* c) { delete c; }

wg_status wg_frameset_build(const wg_config* c, wg_frameset** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = new wg_frameset{wgabor::build_frameset(c->impl)};
  });
}

wg_status wg_frameset_save(const wg_frameset* fs, const char* path) {
  return guarded([&] {
    require(fs && path, "null argument");
    wgabor::save_frameset(fs->impl, path);
  });
}

wg_status wg_frameset_load(const char* path, wg_frameset** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new wg_frameset{wgabor::load_frameset(path)};
  });
}

void wg_frameset_destroy(wg_frameset* fs) { delete fs; }

wg_status wg_frameset_info_get(const wg_frameset* fs, wg_frameset_info* out) {
  return guarded([&] {
    require(fs && out, "null argument");
    const wgabor::FrameParams& p = fs->impl.params;
    const wgabor::CostReport cost = wgabor::estimate_cost(fs->impl);
    *out = wg_frameset_info{};
    out->sample_rate = p.sample_rate;
    out->a = p.a;
    out->b = p.b;
    out->BW = p.BW;
    out->K = p.K;
    out->R = p.R;
    out->q_sup = p.q_sup;
    out->C_b = p.C_b;
    out->C_d = p.C_d;
    out->C_cut = p.C_cut;
    out->C_Tc = p.C_Tc;
    out->T_max = p.T_max;
    out->T_c = p.T_c;
    out->N_c = p.N_c;
    out->theta_inf = p.theta_inf;
    out->hash = fs->impl.hash;
    out->memory_bytes = fs->impl.total_memory;
    out->n_avg = cost.n_avg;
    out->mem_precompute = cost.mem_cells_precompute;
    out->mem_improved = cost.mem_cells_improved;
    out->mem_min = cost.mem_cells_min;
    out->delay_samples = 0;
  });
}

wg_status wg_frameset_describe(const wg_frameset* fs, char** out) {
  return guarded([&] {
    require(fs && out, "null argument");
    const wgabor::FrameParams& p = fs->impl.params;
    const wgabor::CostReport cost = wgabor::estimate_cost(fs->impl);
    std::ostringstream os;
    os << "sample_rate " << p.sample_rate << "\n"
       << "a " << p.a << "  b " << p.b << "  BW " << p.BW << "  K " << p.K
       << "  R " << p.R << "\n"
       << "q_sup " << p.q_sup << "\n"
       << "C_b " << p.C_b << "  C_d " << p.C_d << "  C_cut " << p.C_cut
       << "  C_Tc " << p.C_Tc << "\n"
       << "T_max " << p.T_max << "  T_c " << p.T_c << "  N_c " << p.N_c << "\n"
       << "theta_inf " << p.theta_inf << "\n"
       << "hash " << std::hex << fs->impl.hash << std::dec << "\n"
       << "memory_bytes " << fs->impl.total_memory << "\n"
       << "N_avg " << cost.n_avg << " flops/sample\n"
       << "mem cells: precompute " << cost.mem_cells_precompute
       << ", improved " << cost.mem_cells_improved << ", min "
       << cost.mem_cells_min << "\n"
       << "delay_samples 0\n"
       << "band  f_q(Hz)      BW_q(Hz)     n_q     T_q(s)\n";
    for (std::int32_t q = 0; q < p.q_sup; ++q) {
      os << std::setw(4) << q << "  " << std::setw(11) << p.f_q[q] << "  "
         << std::setw(11) << p.BW_q[q] << "  " << std::setw(6) << p.n_q[q]
         << "  " << fs->impl.elements[q].T_q << "\n";
    }
    *out = dup_string(os.str());
  });
}

wg_status wg_frameset_warnings(const wg_frameset* fs, char** out) {
  return guarded([&] {
    require(fs && out, "null argument");
    std::string s;
    for (const std::string& w : fs->impl.warnings) {
      s += w;
      s += '\n';
    }
    *out = dup_string(s);
  });
}

wg_status wg_frameset_atom(const wg_frameset* fs, int32_t q, double** out,
                           int64_t* out_len, int64_t* out_center,
                           int32_t* out_hop) {
  return guarded([&] {
    require(fs && out && out_len && out_center && out_hop, "null argument");
    require(q >= 0 && q < fs->impl.params.q_sup, "band index out of range");
    const wgabor::FrameElement& e = fs->impl.elements[q];
    auto* p = new double[e.samples.size()];
    for (std::size_t i = 0; i < e.samples.size(); ++i) {
      p[i] = e.samples[i].real();
    }
    *out = p;
    *out_len = static_cast<int64_t>(e.samples.size());
    *out_center = e.center_offset;
    *out_hop = e.n_q;
  });
}

wg_status wg_frameset_flatness(const wg_frameset* fs, double* max_deviation,
                               double* bound_ratio) {
  return guarded([&] {
    require(fs && max_deviation && bound_ratio, "null argument");
    const wgabor::FlatnessReport r = wgabor::pr_diagnostic(fs->impl);
    *max_deviation = r.max_deviation;
    *bound_ratio = r.bound_ratio;
  });
}

wg_status wg_analyze(const wg_frameset* fs, const double* signal, int64_t len,
                     wg_coeffs** out) {
  return guarded([&] {
    require(fs && signal && out, "null argument");
    require(len > 0, "len must be positive");
    *out = new wg_coeffs{wgabor::analyze(
        std::span<const double>(signal, static_cast<std::size_t>(len)),
        fs->impl)};
  });
}

wg_status wg_synthesize(const wg_frameset* fs, const wg_coeffs* c, double** out,
                        int64_t* out_len) {
  return guarded([&] {
    require(fs && c && out && out_len, "null argument");
    const std::vector<double> y = wgabor::synthesize(c->impl, fs->impl);
    *out = dup_buffer(y.data(), y.size());
    *out_len = static_cast<int64_t>(y.size());
  });
}

wg_status wg_coeffs_save(const wg_coeffs* c, const char* path) {
  return guarded([&] {
    require(c && path, "null argument");
    wgabor::save_coeffs(c->impl, path);
  });
}

wg_status wg_coeffs_load(const char* path, wg_coeffs** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new wg_coeffs{wgabor::load_coeffs(path)};
  });
}

wg_status wg_coeffs_input_length(const wg_coeffs* c, int64_t* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = c->impl.input_length;
  });
}

wg_status wg_coeffs_hash(const wg_coeffs* c, uint64_t* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = c->impl.frame_hash;
  });
}

void wg_coeffs_destroy(wg_coeffs* c) { delete c; }

wg_status wg_gen_signal(const char* kind, double duration, double sample_rate,
                        uint64_t seed, double param, const char* path,
                        const wg_frameset* fs, double** out, int64_t* out_len) {
  return guarded([&] {
    require(kind && out && out_len, "null argument");
    wgabor::TestSignal spec;
    spec.kind = kind;
    spec.duration = duration;
    spec.sample_rate = sample_rate;
    spec.seed = seed;
    if (spec.kind == "sine") spec.freq = param;
    if (spec.kind == "clicks" && param > 0) spec.spacing = param;
    if (spec.kind == "atoms" && param > 0) spec.density = param;
    if (path) spec.path = path;
    const std::vector<double> x =
        wgabor::gen_signal(spec, fs ? &fs->impl : nullptr);
    *out = dup_buffer(x.data(), x.size());
    *out_len = static_cast<int64_t>(x.size());
  });
}

wg_status wg_measure_err(const double* input, const double* output, int64_t len,
                         int64_t out_len, int64_t delay_samples, double t_max_s,
                         double sample_rate, double* out_db) {
  return guarded([&] {
    require(input && output && out_db, "null argument");
    require(len > 0 && out_len > 0, "empty signal");
    const std::vector<double> in(input, input + len);
    const std::vector<double> outv(output, output + out_len);
    *out_db =
        wgabor::measure_err(in, outv, delay_samples, t_max_s, sample_rate);
  });
}

wg_status wg_run_suite(const char* suite, const wg_config* base, char** out_tsv,
                       char** out_table) {
  return guarded([&] {
    require(suite && base, "null argument");
    const wgabor::ErrorReport r = wgabor::run_suite(suite, base->impl);
    if (out_tsv) *out_tsv = dup_string(r.to_tsv());
    if (out_table) *out_table = dup_string(r.to_table());
  });
}

wg_status wg_wav_read(const char* path, double** out, int64_t* out_len,
                      double* out_rate, int* out_downmixed) {
  return guarded([&] {
    require(path && out && out_len && out_rate, "null argument");
    wgabor::WavData w = wgabor::read_wav(path);
    *out = dup_buffer(w.samples.data(), w.samples.size());
    *out_len = static_cast<int64_t>(w.samples.size());
    *out_rate = w.sample_rate;
    if (out_downmixed) *out_downmixed = w.downmixed ? 1 : 0;
  });
}

wg_status wg_wav_write(const char* path, const double* samples, int64_t len,
                       double sample_rate) {
  return guarded([&] {
    require(path && samples, "null argument");
    require(len > 0, "empty signal");
    wgabor::write_wav(path,
                      std::vector<double>(samples, samples + len),
                      sample_rate);
  });
}

}  // extern "C"
