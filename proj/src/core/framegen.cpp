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

#include "core/framegen.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "cache format is little-endian; big-endian hosts unsupported");

namespace wgabor {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t compute_hash(const FrameSet& fs) {
  std::uint64_t h = 14695981039346656037ULL;
  const double scalars[] = {fs.params.sample_rate, fs.params.K, fs.params.R,
                            fs.params.a,           fs.params.b, fs.params.C_d,
                            fs.params.C_cut,       fs.params.T_max};
  h = fnv1a(h, scalars, sizeof(scalars));
  const std::int32_t qs = fs.params.q_sup;
  h = fnv1a(h, &qs, sizeof(qs));
  for (const FrameElement& e : fs.elements) {
    h = fnv1a(h, &e.n_q, sizeof(e.n_q));
    h = fnv1a(h, &e.center_offset, sizeof(e.center_offset));
    const std::uint64_t len = e.samples.size();
    h = fnv1a(h, &len, sizeof(len));
    h = fnv1a(h, e.samples.data(), len * sizeof(std::complex<double>));
  }
  return h;
}

}  // namespace

std::vector<double> band_spectrum(std::int32_t q, std::int64_t n_fft,
                                  const FrameParams& p, const WarpMap& map,
                                  const PrototypeWindow& w) {
  const double sr = p.sample_rate;
  const double scale =
      std::sqrt(p.d_q[static_cast<std::size_t>(std::abs(q))] / p.a);
  const double qb = q * p.b;
  // Coefficients are sampled every d_q seconds, so spectral content farther
  // than 1/(2 d_q) from the band center would alias into the band. The slow
  // sinc tails of the raised cosine are zeroed beyond that boundary; the
  // tail level there is ~4e-4 of the peak, so the cut itself is benign while
  // the aliasing it prevents would dominate the reconstruction error. The
  // gaussian tails are already below that level at the boundary.
  const bool restrict_tails = w.kind() == PrototypeWindow::Kind::RaisedCosine;
  const double f_center = map.eval(qb);
  const double half_alias_free =
      0.5 / p.d_q[static_cast<std::size_t>(std::abs(q))];
  std::vector<double> spec(static_cast<std::size_t>(n_fft));
  for (std::int64_t m = 0; m < n_fft; ++m) {
    const double f =
        (m < n_fft / 2 ? m : m - n_fft) * sr / static_cast<double>(n_fft);
    double v = 0;
    for (int k = -1; k <= 1; ++k) {
      const double fu = f + k * sr;  // unwrapped frequency
      if (restrict_tails && std::abs(fu - f_center) > half_alias_free) {
        continue;
      }
      v += w.freq_eval(map.eval_inverse(fu) - qb);
    }
    spec[static_cast<std::size_t>(m)] = scale * v;
  }
  return spec;
}

FrameElement generate_atom(std::int32_t q, const FrameParams& p,
                           const WarpMap& map, const PrototypeWindow& w,
                           std::vector<std::string>* warnings) {
  if (q < 0 || q >= p.q_sup) {
    throw std::invalid_argument("generate_atom: band index out of range");
  }
  const std::int64_t n = p.N_c;
  if (static_cast<double>(n) / p.sample_rate < w.duration()) {
    throw std::invalid_argument(
        "generate_atom: precompute buffer shorter than the prototype window");
  }
  const std::vector<double> spec = band_spectrum(q, n, p, map, w);

  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
  for (std::int64_t m = 0; m < n; ++m) {
    buf[static_cast<std::size_t>(m)] = spec[static_cast<std::size_t>(m)];
  }
  fftw_plan plan = fftw_plan_dft_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(buf.data()),
      reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
      FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  // Continuous-time inverse transform is (SR/N) * IDFT; the extra 1/sqrt(SR)
  // makes the discrete analysis/synthesis sums approximate the continuous
  // inner products without a separate 1/SR factor.
  const double scale = std::sqrt(p.sample_rate) / static_cast<double>(n);
  for (auto& v : buf) v *= scale;

  std::int64_t peak = 0;
  double peak_mag = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double m = std::abs(buf[static_cast<std::size_t>(i)]);
    if (m > peak_mag) {
      peak_mag = m;
      peak = i;
    }
  }

  FrameElement e;
  e.q = q;
  e.n_q = p.n_q[static_cast<std::size_t>(q)];
  e.center_offset = n / 2;
  e.samples.resize(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    e.samples[static_cast<std::size_t>(j)] =
        buf[static_cast<std::size_t>((j - n / 2 + peak + 2 * n) % n)];
  }
  e.T_q = static_cast<double>(n) / p.sample_rate;
  e.energy = 0;
  for (const auto& v : e.samples) e.energy += std::norm(v);
  e.trunc_loss = 0;

  const double edge =
      std::max(std::abs(e.samples.front()), std::abs(e.samples.back()));
  if (warnings && peak_mag > 0 && edge > 1e-4 * peak_mag) {
    std::ostringstream os;
    os << "band " << q << ": atom tail at the precompute buffer edge is "
       << edge / peak_mag << " of its peak; increase C_Tc to avoid "
       << "wraparound contamination";
    warnings->push_back(os.str());
  }
  return e;
}

FrameElement truncate_atom(FrameElement e, double C_cut, double T_max,
                           double sample_rate,
                           std::vector<std::string>* warnings) {
  if (!(C_cut > 1.0) || !(T_max > 0)) {
    throw std::invalid_argument("truncate_atom: need C_cut > 1 and T_max > 0");
  }
  const auto n = static_cast<std::int64_t>(e.samples.size());
  const std::int64_t c = e.center_offset;
  double peak = 0;
  for (const auto& v : e.samples) peak = std::max(peak, std::abs(v));
  if (!(peak > 0)) {
    throw std::runtime_error("truncate_atom: atom is identically zero");
  }
  const double thresh = peak / C_cut;

  // Last index on each side (scanning outward from the center) whose
  // magnitude still reaches the threshold; interior ripple below threshold
  // is kept.
  std::int64_t lo = c, hi = c;
  for (std::int64_t i = c; i < n; ++i) {
    if (std::abs(e.samples[static_cast<std::size_t>(i)]) >= thresh) hi = i;
  }
  for (std::int64_t i = c; i >= 0; --i) {
    if (std::abs(e.samples[static_cast<std::size_t>(i)]) >= thresh) lo = i;
  }

  const auto max_len =
      std::max<std::int64_t>(1, std::llround(T_max * sample_rate));
  const std::int64_t half_left = max_len / 2;
  const std::int64_t half_right = max_len - 1 - half_left;
  lo = std::max(lo, c - half_left);
  hi = std::min(hi, c + half_right);
  if (hi < lo || lo > c || hi < c) {
    throw std::runtime_error("truncate_atom: surviving support is empty");
  }

  const double energy_before = e.energy;
  std::vector<std::complex<double>> kept(
      e.samples.begin() + static_cast<std::ptrdiff_t>(lo),
      e.samples.begin() + static_cast<std::ptrdiff_t>(hi + 1));
  e.samples = std::move(kept);
  e.center_offset = c - lo;
  e.energy = 0;
  for (const auto& v : e.samples) e.energy += std::norm(v);
  e.T_q = static_cast<double>(e.samples.size()) / sample_rate;
  e.trunc_loss =
      energy_before > 0 ? std::max(0.0, 1.0 - e.energy / energy_before) : 0.0;
  if (e.trunc_loss >= 0.5) {
    throw std::runtime_error(
        "truncate_atom: truncation removed half the atom energy");
  }
  if (warnings && e.trunc_loss > 1e-4) {
    std::ostringstream os;
    os << "band " << e.q << ": truncation removed " << e.trunc_loss
       << " of the atom energy; expect elevated reconstruction error";
    warnings->push_back(os.str());
  }
  return e;
}

FrameSet build_frameset(const FrameParams& p, const WarpMap& map,
                        const PrototypeWindow& w) {
  FrameSet fs;
  fs.params = p;
  fs.map = map;
  fs.window = w;
  fs.elements.reserve(static_cast<std::size_t>(p.q_sup));
  for (std::int32_t q = 0; q < p.q_sup; ++q) {
    try {
      FrameElement e = generate_atom(q, p, map, w, &fs.warnings);
      e = truncate_atom(std::move(e), p.C_cut, p.T_max, p.sample_rate,
                        &fs.warnings);
      fs.total_memory += e.samples.size() * sizeof(std::complex<double>);
      fs.elements.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw std::runtime_error("band " + std::to_string(q) + ": " + ex.what());
    }
  }
  fs.hash = compute_hash(fs);
  return fs;
}

FrameSet build_frameset(const Config& config) {
  const ShiftParams s = derive_shifts(config);
  const PrototypeWindow w =
      config.window_kind == PrototypeWindow::Kind::Gaussian
          ? PrototypeWindow::gaussian(config.window_T, s.b, config.R)
          : PrototypeWindow::raised_cosine(config.window_T, s.b, config.R);
  const WarpMap map =
      WarpMap::exponential(config.map_f0, config.map_k, config.sr, s.b);
  std::vector<std::string> warnings;
  const FrameParams p = derive(config, map, w, &warnings);
  FrameSet fs = build_frameset(p, map, w);
  fs.warnings.insert(fs.warnings.begin(), warnings.begin(), warnings.end());
  return fs;
}

namespace {

constexpr char kMagic[4] = {'W', 'G', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("frame cache: truncated file");
  return v;
}

void put_vec_f64(std::ostream& os, const std::vector<double>& v) {
  put<std::uint64_t>(os, v.size());
  os.write(reinterpret_cast<const char*>(v.data()),
           static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> take_vec_f64(std::istream& is) {
  const auto n = take<std::uint64_t>(is);
  std::vector<double> v(n);
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!is) throw std::runtime_error("frame cache: truncated file");
  return v;
}

}  // namespace

void save_frameset(const FrameSet& fs, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("frame cache: cannot open '" + path +
                                    "' for writing");
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, fs.hash);

  const FrameParams& p = fs.params;
  put(os, p.sample_rate);
  put(os, p.K);
  put(os, p.R);
  put(os, p.a);
  put(os, p.b);
  put(os, p.BW);
  put(os, p.q_sup);
  put(os, p.C_b);
  put(os, p.C_d);
  put(os, p.C_cut);
  put(os, p.C_Tc);
  put(os, p.T_max);
  put(os, p.T_c);
  put(os, p.N_c);
  put(os, p.theta_inf);
  put_vec_f64(os, p.f_q);
  put_vec_f64(os, p.BW_q);
  put_vec_f64(os, p.d_q);
  put<std::uint64_t>(os, p.n_q.size());
  os.write(reinterpret_cast<const char*>(p.n_q.data()),
           static_cast<std::streamsize>(p.n_q.size() * sizeof(std::int32_t)));

  const WarpMap& m = fs.map;
  put<std::uint8_t>(os, static_cast<std::uint8_t>(m.kind()));
  put(os, m.f0());
  put(os, m.k());
  put(os, m.sample_rate());
  put(os, m.band_spacing());
  put(os, m.nu_in());
  put(os, m.nu_out());
  put(os, m.nu_top());
  put(os, m.slope_lo());
  put(os, m.slope_hi());
  put(os, m.top_band());

  const PrototypeWindow& w = fs.window;
  put<std::uint8_t>(os, static_cast<std::uint8_t>(w.kind()));
  put(os, w.duration());
  put(os, w.shift());
  put(os, w.overlap());

  for (const FrameElement& e : fs.elements) {
    put(os, e.q);
    put(os, e.n_q);
    put(os, e.center_offset);
    put<std::uint64_t>(os, e.samples.size());
    put(os, e.T_q);
    put(os, e.energy);
    put(os, e.trunc_loss);
  }
  for (const FrameElement& e : fs.elements) {
    os.write(reinterpret_cast<const char*>(e.samples.data()),
             static_cast<std::streamsize>(e.samples.size() *
                                          sizeof(std::complex<double>)));
  }
  if (!os) throw std::runtime_error("frame cache: write failed for '" + path +
                                    "'");
}

FrameSet load_frameset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("frame cache: cannot open '" + path + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("frame cache: bad magic in '" + path + "'");
  }
  if (take<std::uint32_t>(is) != kVersion) {
    throw std::runtime_error("frame cache: unsupported version");
  }
  const auto stored_hash = take<std::uint64_t>(is);

  FrameSet fs;
  FrameParams& p = fs.params;
  p.sample_rate = take<double>(is);
  p.K = take<double>(is);
  p.R = take<double>(is);
  p.a = take<double>(is);
  p.b = take<double>(is);
  p.BW = take<double>(is);
  p.q_sup = take<std::int32_t>(is);
  p.C_b = take<double>(is);
  p.C_d = take<double>(is);
  p.C_cut = take<double>(is);
  p.C_Tc = take<double>(is);
  p.T_max = take<double>(is);
  p.T_c = take<double>(is);
  p.N_c = take<std::int64_t>(is);
  p.theta_inf = take<double>(is);
  p.f_q = take_vec_f64(is);
  p.BW_q = take_vec_f64(is);
  p.d_q = take_vec_f64(is);
  const auto n_hops = take<std::uint64_t>(is);
  p.n_q.resize(n_hops);
  is.read(reinterpret_cast<char*>(p.n_q.data()),
          static_cast<std::streamsize>(n_hops * sizeof(std::int32_t)));
  if (!is) throw std::runtime_error("frame cache: truncated file");

  const auto map_kind = static_cast<WarpMap::Kind>(take<std::uint8_t>(is));
  const double mf0 = take<double>(is);
  const double mk = take<double>(is);
  const double msr = take<double>(is);
  const double mb = take<double>(is);
  const double mnu_in = take<double>(is);
  const double mnu_out = take<double>(is);
  const double mnu_top = take<double>(is);
  const double mslope_lo = take<double>(is);
  const double mslope_hi = take<double>(is);
  const auto mtop = take<std::int32_t>(is);
  fs.map = WarpMap::from_fields(map_kind, mf0, mk, msr, mb, mnu_in, mnu_out,
                                mnu_top, mslope_lo, mslope_hi, mtop);

  const auto win_kind = static_cast<PrototypeWindow::Kind>(
      take<std::uint8_t>(is));
  const double wT = take<double>(is);
  const double wb = take<double>(is);
  const double wR = take<double>(is);
  fs.window = win_kind == PrototypeWindow::Kind::Gaussian
                  ? PrototypeWindow::gaussian(wT, wb, wR)
                  : PrototypeWindow::raised_cosine(wT, wb, wR);

  fs.elements.resize(static_cast<std::size_t>(p.q_sup));
  std::vector<std::uint64_t> lengths(static_cast<std::size_t>(p.q_sup));
  for (std::int32_t q = 0; q < p.q_sup; ++q) {
    FrameElement& e = fs.elements[static_cast<std::size_t>(q)];
    e.q = take<std::int32_t>(is);
    e.n_q = take<std::int32_t>(is);
    e.center_offset = take<std::int64_t>(is);
    lengths[static_cast<std::size_t>(q)] = take<std::uint64_t>(is);
    e.T_q = take<double>(is);
    e.energy = take<double>(is);
    e.trunc_loss = take<double>(is);
  }
  for (std::int32_t q = 0; q < p.q_sup; ++q) {
    FrameElement& e = fs.elements[static_cast<std::size_t>(q)];
    e.samples.resize(lengths[static_cast<std::size_t>(q)]);
    is.read(reinterpret_cast<char*>(e.samples.data()),
            static_cast<std::streamsize>(e.samples.size() *
                                         sizeof(std::complex<double>)));
    if (!is) throw std::runtime_error("frame cache: truncated file");
    fs.total_memory += e.samples.size() * sizeof(std::complex<double>);
  }

  fs.hash = compute_hash(fs);
  if (fs.hash != stored_hash) {
    throw std::runtime_error("frame cache: content hash mismatch in '" + path +
                             "' (corrupt file)");
  }
  return fs;
}

}  // namespace wgabor
