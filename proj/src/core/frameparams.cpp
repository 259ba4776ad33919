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

#include "core/frameparams.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wgabor {

ShiftParams derive_shifts(const Config& config) {
  ShiftParams s;
  s.a = config.a > 0 ? config.a : config.window_T / config.R;
  s.b = 1.0 / (s.a * config.R * config.C_b);
  return s;
}

FrameParams derive(const Config& config, const WarpMap& map,
                   const PrototypeWindow& window,
                   std::vector<std::string>* warnings) {
  const ShiftParams s = derive_shifts(config);
  if (std::abs(map.band_spacing() - s.b) > 1e-9 * s.b) {
    throw std::invalid_argument(
        "derive: warp map was built with a different band spacing b");
  }

  FrameParams p;
  p.sample_rate = config.sr;
  p.K = config.K;
  p.R = config.R;
  p.a = s.a;
  p.b = s.b;
  p.BW = p.K * p.b;
  p.C_b = config.C_b;
  p.C_d = config.C_d;
  p.C_cut = config.C_cut;
  p.C_Tc = config.C_Tc;
  p.T_max = config.T_max;

  if (warnings && p.R != p.K) {
    std::ostringstream os;
    os << "derive: R=" << p.R << " differs from K=" << p.K
       << " (the reference construction uses R=K)";
    warnings->push_back(os.str());
  }
  if (warnings && p.C_Tc < 1.0) {
    warnings->push_back(
        "derive: C_Tc < 1 shortens the precompute buffer below the nominal "
        "window extent; expect wraparound error");
  }

  if (p.a * p.b * p.K > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "derive: frame condition a*b*K <= 1 violated (a*b*K = "
       << p.a * p.b * p.K << ")";
    throw std::invalid_argument(os.str());
  }

  // The map construction pins theta(top_band * b) = SR/2; cross-check that
  // the grid actually hits Nyquist.
  const double half_sr = p.sample_rate / 2.0;
  const double q_cont = map.eval_inverse(half_sr) / p.b;
  const double q_round = std::round(q_cont);
  if (std::abs(q_cont - q_round) > 0.5 - 1e-9 ||
      std::llround(q_round) != map.top_band()) {
    throw std::invalid_argument(
        "derive: warping map does not hit Nyquist on the band grid");
  }
  // Bands q = 0 .. top_band inclusive; theta((q_sup - 1) b) = SR/2.
  p.q_sup = map.top_band() + 1;

  p.f_q.resize(p.q_sup);
  p.BW_q.resize(p.q_sup);
  p.n_q.resize(p.q_sup);
  p.d_q.resize(p.q_sup);
  for (std::int32_t q = 0; q < p.q_sup; ++q) {
    const double qb = q * p.b;
    p.f_q[q] = map.eval(qb);
    p.BW_q[q] = map.eval(qb + p.BW / 2.0) - map.eval(qb - p.BW / 2.0);
    if (!(p.BW_q[q] > 0)) {
      throw std::runtime_error("derive: nonpositive warped bandwidth");
    }
    const auto hop = static_cast<std::int64_t>(
        std::floor(p.sample_rate / (p.BW_q[q] * p.C_d)));
    p.n_q[q] = static_cast<std::int32_t>(std::max<std::int64_t>(1, hop));
    p.d_q[q] = p.n_q[q] / p.sample_rate;
    if (p.d_q[q] * p.BW_q[q] > 1.0 + 1e-9) {
      std::ostringstream os;
      os << "derive: frame condition d_q*BW_q <= 1 violated at band " << q
         << " (d_q*BW_q = " << p.d_q[q] * p.BW_q[q] << ")";
      throw std::invalid_argument(os.str());
    }
  }

  // Infimum of theta' over the analysis range, on a dense grid.
  const double nu_hi = (p.q_sup - 1) * p.b;
  double inf = map.eval_derivative(0.0);
  const int grid = 100000;
  for (int i = 1; i <= grid; ++i) {
    inf = std::min(inf, map.eval_derivative(nu_hi * i / grid));
  }
  p.theta_inf = inf;

  p.T_c = (window.duration() / p.theta_inf) * p.C_Tc;
  std::int64_t n = 1;
  while (n < static_cast<std::int64_t>(std::ceil(p.T_c * p.sample_rate))) {
    n <<= 1;
  }
  p.N_c = n;
  if (static_cast<double>(p.N_c) / p.sample_rate < window.duration()) {
    throw std::invalid_argument(
        "derive: precompute buffer shorter than the prototype window");
  }
  return p;
}

FrameConditionReport check_frame_conditions(const FrameParams& p) {
  FrameConditionReport r;
  r.ab_margin = 1.0 - p.a * p.b * p.K;
  r.ok = r.ab_margin >= -1e-9;
  r.dq_margins.resize(p.q_sup);
  std::ostringstream os;
  if (!r.ok) os << "a*b*K exceeds 1 by " << -r.ab_margin << "; ";
  for (std::int32_t q = 0; q < p.q_sup; ++q) {
    r.dq_margins[q] = 1.0 - p.d_q[q] * p.BW_q[q];
    if (r.dq_margins[q] < -1e-9) {
      if (r.ok) os << "d_q*BW_q exceeds 1 first at band " << q << "; ";
      r.ok = false;
    }
  }
  r.message = r.ok ? "frame conditions satisfied" : os.str();
  return r;
}

}  // namespace wgabor
