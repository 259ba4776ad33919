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

#include "core/warpmap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wgabor {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double core_eval(double f0, double k, double nu) {
  return f0 * std::exp2(nu / k);
}

double core_deriv(double f0, double k, double nu) {
  return f0 * (kLn2 / k) * std::exp2(nu / k);
}

// Abscissa at which the tangent of the exponential core at u reaches SR/2.
double tangent_hit(double f0, double k, double half_sr, double u) {
  const double v = core_eval(f0, k, u);
  return u + (half_sr - v) / core_deriv(f0, k, u);
}

}  // namespace

WarpMap WarpMap::exponential(double f0, double k, double sample_rate,
                             double b) {
  if (!(f0 > 0) || !(k > 0) || !(sample_rate > 0) || !(b > 0)) {
    throw std::invalid_argument("warp map: f0, k, SR, b must all be positive");
  }
  const double half_sr = sample_rate / 2.0;

  WarpMap m;
  m.kind_ = Kind::Exponential;
  m.f0_ = f0;
  m.k_ = k;
  m.sample_rate_ = sample_rate;
  m.b_ = b;

  // The low tangent passes through the origin only when it touches the core
  // at nu_in = k / ln 2, giving f_in = e * f0.
  m.nu_in_ = k / kLn2;
  m.f_in_ = core_eval(f0, k, m.nu_in_);
  m.slope_lo_ = core_deriv(f0, k, m.nu_in_);

  if (m.f_in_ >= half_sr) {
    throw std::invalid_argument(
        "warp map: f0 too large for SR/2 (no exponential region below "
        "Nyquist)");
  }

  // Unconstrained warped abscissa of Nyquist on the pure core.
  const double nu_half = k * std::log2(half_sr / f0);
  // Smallest grid point strictly above nu_half, so the upper tail has
  // genuine extent and theta'' = 0 in a neighbourhood of nu_top.
  m.top_band_ = static_cast<std::int32_t>(std::floor(nu_half / b)) + 1;
  m.nu_top_ = m.top_band_ * b;
  if (m.nu_top_ <= m.nu_in_) {
    throw std::invalid_argument(
        "warp map: k too small, Nyquist grid point falls below the "
        "exponential region");
  }

  // One free scalar: the upper tangency abscissa u in (nu_in, nu_half).
  // tangent_hit(u) decreases from above nu_top to nu_half < nu_top, so the
  // root is bracketed; bisect to machine precision.
  double lo = m.nu_in_;
  double hi = nu_half;
  if (tangent_hit(f0, k, half_sr, lo) < m.nu_top_) {
    throw std::invalid_argument(
        "warp map: no bracketing interval for the upper tangency point");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (tangent_hit(f0, k, half_sr, mid) >= m.nu_top_) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  m.nu_out_ = 0.5 * (lo + hi);
  m.f_out_ = core_eval(f0, k, m.nu_out_);
  m.slope_hi_ = core_deriv(f0, k, m.nu_out_);

  const double residual =
      m.f_out_ + m.slope_hi_ * (m.nu_top_ - m.nu_out_) - half_sr;
  if (std::abs(residual) > 1e-12 * half_sr) {
    throw std::runtime_error("warp map: Nyquist root find did not converge");
  }
  return m;
}

WarpMap WarpMap::identity(double sample_rate, double b) {
  if (!(sample_rate > 0) || !(b > 0)) {
    throw std::invalid_argument("warp map: SR and b must be positive");
  }
  const double q = sample_rate / 2.0 / b;
  const auto qr = std::llround(q);
  if (std::abs(q - static_cast<double>(qr)) > 1e-9 || qr < 1) {
    throw std::invalid_argument(
        "warp map: identity map requires SR/2 to be a multiple of b");
  }
  WarpMap m;
  m.kind_ = Kind::Identity;
  m.sample_rate_ = sample_rate;
  m.b_ = b;
  m.nu_in_ = 0;
  m.nu_out_ = 0;
  m.nu_top_ = sample_rate / 2.0;
  m.f_in_ = 0;
  m.f_out_ = 0;
  m.slope_lo_ = 1.0;
  m.slope_hi_ = 1.0;
  m.top_band_ = static_cast<std::int32_t>(qr);
  return m;
}

WarpMap WarpMap::from_fields(Kind kind, double f0, double k,
                             double sample_rate, double b, double nu_in,
                             double nu_out, double nu_top, double slope_lo,
                             double slope_hi, std::int32_t top_band) {
  WarpMap m;
  m.kind_ = kind;
  m.f0_ = f0;
  m.k_ = k;
  m.sample_rate_ = sample_rate;
  m.b_ = b;
  m.nu_in_ = nu_in;
  m.nu_out_ = nu_out;
  m.nu_top_ = nu_top;
  m.slope_lo_ = slope_lo;
  m.slope_hi_ = slope_hi;
  m.top_band_ = top_band;
  if (kind == Kind::Exponential) {
    m.f_in_ = core_eval(f0, k, nu_in);
    m.f_out_ = core_eval(f0, k, nu_out);
  }
  return m;
}

double WarpMap::eval(double nu) const {
  if (kind_ == Kind::Identity) return nu;
  const double x = std::abs(nu);
  double v;
  if (x < nu_in_) {
    v = slope_lo_ * x;
  } else if (x < nu_out_) {
    v = core_eval(f0_, k_, x);
  } else {
    v = f_out_ + slope_hi_ * (x - nu_out_);
  }
  return nu < 0 ? -v : v;
}

double WarpMap::eval_inverse(double f) const {
  if (kind_ == Kind::Identity) return f;
  const double x = std::abs(f);
  double v;
  if (x < f_in_) {
    v = x / slope_lo_;
  } else if (x < f_out_) {
    v = k_ * std::log2(x / f0_);
  } else {
    v = nu_out_ + (x - f_out_) / slope_hi_;
  }
  return f < 0 ? -v : v;
}

double WarpMap::eval_derivative(double nu) const {
  if (kind_ == Kind::Identity) return 1.0;
  const double x = std::abs(nu);
  if (x < nu_in_) return slope_lo_;
  if (x < nu_out_) return core_deriv(f0_, k_, x);
  return slope_hi_;
}

}  // namespace wgabor
