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

#include "core/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace wgabor {

namespace {

// Support extents of an atom relative to its alignment center.
struct Extent {
  std::int64_t before;  // samples before the center (inclusive reach)
  std::int64_t after;   // samples after the center (inclusive reach)
};

Extent extent_of(const FrameElement& e) {
  return {e.center_offset,
          static_cast<std::int64_t>(e.samples.size()) - 1 - e.center_offset};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

}  // namespace

Analyzer::Analyzer(const FrameSet& fs) : fs_(fs) {
  if (fs_.elements.empty()) {
    throw std::invalid_argument("analyze: empty frame set");
  }
  out_.sample_rate = fs_.params.sample_rate;
  out_.frame_hash = fs_.hash;
  const auto nb = fs_.elements.size();
  out_.bands.resize(nb);
  next_frame_.resize(nb);
  first_frame_.resize(nb);
  frames_done_.resize(nb);
  for (std::size_t q = 0; q < nb; ++q) {
    const FrameElement& e = fs_.elements[q];
    const Extent ex = extent_of(e);
    first_frame_[q] = -floor_div(ex.after, e.n_q);
    next_frame_[q] = first_frame_[q];
    out_.bands[q].q = e.q;
    out_.bands[q].n_q = e.n_q;
    out_.bands[q].first_frame = first_frame_[q];
  }
}

void Analyzer::push(std::span<const double> block) {
  if (finalized_) throw std::logic_error("analyze: push after finalize");
  signal_.insert(signal_.end(), block.begin(), block.end());
  compute_ready(false);
}

void Analyzer::compute_ready(bool at_end) {
  const auto len = static_cast<std::int64_t>(signal_.size());
  const double* s = signal_.data();
  for (std::size_t q = 0; q < fs_.elements.size(); ++q) {
    const FrameElement& e = fs_.elements[q];
    const Extent ex = extent_of(e);
    // Last frame whose support still overlaps the signal.
    const std::int64_t last = floor_div(len - 1 + ex.before, e.n_q);
    for (std::int64_t n = next_frame_[q]; n <= last; ++n) {
      const std::int64_t center = n * e.n_q;
      // Unless the signal has ended, wait until the support is covered.
      if (!at_end && center + ex.after >= len) break;
      const std::int64_t t0 = std::max<std::int64_t>(0, center - ex.before);
      const std::int64_t t1 = std::min<std::int64_t>(len - 1, center + ex.after);
      const std::complex<double>* a =
          e.samples.data() + (t0 - center + e.center_offset);
      double re = 0, im = 0;
      const std::int64_t m = t1 - t0 + 1;
      const double* sp = s + t0;
      for (std::int64_t i = 0; i < m; ++i) {
        re += sp[i] * a[i].real();
        im -= sp[i] * a[i].imag();
      }
      out_.bands[q].c.emplace_back(re, im);
      flops_ += 4 * static_cast<std::uint64_t>(m);
      next_frame_[q] = n + 1;
    }
  }
}

CoefficientStream Analyzer::finalize() {
  if (finalized_) throw std::logic_error("analyze: finalize called twice");
  if (signal_.empty()) {
    throw std::invalid_argument("analyze: empty signal");
  }
  compute_ready(true);
  out_.input_length = static_cast<std::int64_t>(signal_.size());
  finalized_ = true;
  return std::move(out_);
}

CoefficientStream analyze(std::span<const double> signal, const FrameSet& fs,
                          std::uint64_t* flops) {
  Analyzer an(fs);
  an.push(signal);
  CoefficientStream cs = an.finalize();
  if (flops) *flops = an.flops();
  return cs;
}

Synthesizer::Synthesizer(const CoefficientStream& coeffs, const FrameSet& fs)
    : coeffs_(coeffs), fs_(fs) {
  if (coeffs_.frame_hash != fs_.hash) {
    throw std::invalid_argument(
        "synthesize: coefficient stream was produced against a different "
        "frame cache (hash mismatch)");
  }
  length_ = coeffs_.input_length;
}

void Synthesizer::render(std::int64_t start, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  const std::int64_t end = start + static_cast<std::int64_t>(out.size());
  for (const BandCoeffs& band : coeffs_.bands) {
    const FrameElement& e =
        fs_.elements[static_cast<std::size_t>(band.q)];
    const Extent ex = extent_of(e);
    const double w = band_weight(band.q, fs_.params.q_sup);
    std::int64_t n_lo = ceil_div(start - ex.after, e.n_q);
    std::int64_t n_hi = floor_div(end - 1 + ex.before, e.n_q);
    n_lo = std::max(n_lo, band.first_frame);
    n_hi = std::min(n_hi, band.first_frame +
                              static_cast<std::int64_t>(band.c.size()) - 1);
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
      const std::complex<double> c =
          band.c[static_cast<std::size_t>(n - band.first_frame)];
      const std::int64_t center = n * e.n_q;
      const std::int64_t t0 = std::max(start, center - ex.before);
      const std::int64_t t1 = std::min(end - 1, center + ex.after);
      const std::complex<double>* a =
          e.samples.data() + (t0 - center + e.center_offset);
      double* o = out.data() + (t0 - start);
      const std::int64_t m = t1 - t0 + 1;
      const double cr = w * c.real();
      const double ci = w * c.imag();
      for (std::int64_t i = 0; i < m; ++i) {
        o[i] += cr * a[i].real() - ci * a[i].imag();
      }
    }
  }
}

std::size_t Synthesizer::pull(std::span<double> out) {
  const std::int64_t remaining = length_ - position_;
  const auto n = std::min<std::int64_t>(
      remaining, static_cast<std::int64_t>(out.size()));
  if (n <= 0) return 0;
  render(position_, out.subspan(0, static_cast<std::size_t>(n)));
  position_ += n;
  return static_cast<std::size_t>(n);
}

std::vector<double> synthesize(const CoefficientStream& coeffs,
                               const FrameSet& fs) {
  Synthesizer sy(coeffs, fs);
  std::vector<double> out(static_cast<std::size_t>(sy.output_length()));
  std::span<double> rest(out);
  while (!rest.empty()) {
    const std::size_t n = sy.pull(rest);
    if (n == 0) break;
    rest = rest.subspan(n);
  }
  return out;
}

RoundTripResult roundtrip(std::span<const double> signal, const FrameSet& fs) {
  RoundTripResult r;
  CoefficientStream cs = analyze(signal, fs, &r.analysis_flops);
  r.output = synthesize(cs, fs);
  r.latency.delay_samples = 0;
  r.latency.band_delay.assign(fs.elements.size(), 0);
  return r;
}

CostReport estimate_cost(const FrameSet& fs) {
  CostReport r;
  double l0 = 0;
  for (const FrameElement& e : fs.elements) {
    const auto l = static_cast<double>(e.samples.size());
    if (e.q == 0) l0 = l;
    r.n_avg += 4.0 * l / e.n_q;
    r.worst_frame += 4.0 * l;
    r.mem_cells_min += l;
  }
  r.mem_cells_precompute = 2.0 * static_cast<double>(fs.elements.size()) * l0;
  r.mem_cells_improved = l0 + r.mem_cells_min;
  return r;
}

FlatnessReport pr_diagnostic(const FrameSet& fs, int grid_points) {
  const FrameParams& p = fs.params;
  const double sr = p.sample_rate;
  FlatnessReport r;
  r.d_min = 1e300;
  r.d_max = 0;
  // Response of the real chain: out(f) = D(f) x(f) with
  // D(f) = (1/a) sum_q (w_q/2) (H_q(f)^2 + H_q(-f)^2), H_q the periodized
  // band spectrum. The mirrored terms cover the implicit negative bands.
  auto band_h = [&](std::int32_t q, double f) {
    double h = 0;
    for (int k = -1; k <= 1; ++k) {
      h += fs.window.freq_eval(fs.map.eval_inverse(f + k * sr) - q * p.b);
    }
    return h;
  };
  for (int i = 0; i <= grid_points; ++i) {
    const double f = (sr / 2.0) * i / grid_points;
    double d = 0;
    for (std::int32_t q = 0; q < p.q_sup; ++q) {
      const double hp = band_h(q, f);
      const double hm = band_h(q, -f);
      d += band_weight(q, p.q_sup) * 0.5 * (hp * hp + hm * hm);
    }
    d /= p.a;
    r.d_min = std::min(r.d_min, d);
    r.d_max = std::max(r.d_max, d);
    r.max_deviation = std::max(r.max_deviation, std::abs(d - 1.0));
  }
  r.bound_ratio = r.d_min > 0 ? r.d_max / r.d_min : 0.0;
  return r;
}

namespace {

constexpr char kCoeffMagic[4] = {'W', 'G', 'C', '1'};
constexpr std::uint32_t kCoeffVersion = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("coefficient file: truncated");
  return v;
}

}  // namespace

void save_coeffs(const CoefficientStream& cs, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("coefficient file: cannot open '" + path +
                             "' for writing");
  }
  os.write(kCoeffMagic, 4);
  put(os, kCoeffVersion);
  put(os, cs.frame_hash);
  put(os, cs.sample_rate);
  put(os, cs.input_length);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(cs.bands.size()));
  for (const BandCoeffs& b : cs.bands) {
    put(os, b.q);
    put(os, b.n_q);
    put(os, b.first_frame);
    put<std::uint64_t>(os, b.c.size());
  }
  for (const BandCoeffs& b : cs.bands) {
    os.write(reinterpret_cast<const char*>(b.c.data()),
             static_cast<std::streamsize>(b.c.size() *
                                          sizeof(std::complex<double>)));
  }
  if (!os) throw std::runtime_error("coefficient file: write failed");
}

CoefficientStream load_coeffs(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error("coefficient file: cannot open '" + path + "'");
  }
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kCoeffMagic, 4) != 0) {
    throw std::runtime_error("coefficient file: bad magic in '" + path + "'");
  }
  if (take<std::uint32_t>(is) != kCoeffVersion) {
    throw std::runtime_error("coefficient file: unsupported version");
  }
  CoefficientStream cs;
  cs.frame_hash = take<std::uint64_t>(is);
  cs.sample_rate = take<double>(is);
  cs.input_length = take<std::int64_t>(is);
  const auto nb = take<std::uint32_t>(is);
  cs.bands.resize(nb);
  std::vector<std::uint64_t> counts(nb);
  for (std::uint32_t i = 0; i < nb; ++i) {
    BandCoeffs& b = cs.bands[i];
    b.q = take<std::int32_t>(is);
    b.n_q = take<std::int32_t>(is);
    b.first_frame = take<std::int64_t>(is);
    counts[i] = take<std::uint64_t>(is);
  }
  for (std::uint32_t i = 0; i < nb; ++i) {
    cs.bands[i].c.resize(counts[i]);
    is.read(reinterpret_cast<char*>(cs.bands[i].c.data()),
            static_cast<std::streamsize>(counts[i] *
                                         sizeof(std::complex<double>)));
    if (!is) throw std::runtime_error("coefficient file: truncated");
  }
  return cs;
}

}  // namespace wgabor
