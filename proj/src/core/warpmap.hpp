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

#ifndef WGABOR_CORE_WARPMAP_HPP
#define WGABOR_CORE_WARPMAP_HPP

#include <cstdint>

namespace wgabor {

/// Frequency warping map theta: warped axis (warped Hz) -> physical axis (Hz).
///
/// The exponential family is f0 * 2^(nu/k) on [nu_in, nu_out], extended by its
/// tangent lines on both sides. The low tangent passes through the origin, so
/// the odd extension theta(-nu) = -theta(nu) is C1 everywhere. The upper
/// tangency point is placed so the tail passes exactly through
/// (nu_top, SR/2) with nu_top on the band grid, nu_top = top_band() * b.
///
/// Immutable after construction; safe for unrestricted concurrent reads.
class WarpMap {
 public:
  enum class Kind : std::uint8_t { Exponential = 0, Identity = 1 };

  // Exponential core map. b is the warped-domain band spacing used to pin
  // nu_top onto the band grid. Throws std::invalid_argument when the
  // construction is infeasible (e.g. f0 * e >= SR/2).
  static WarpMap exponential(double f0, double k, double sample_rate, double b);

  // theta(nu) = nu. Requires SR/2 to sit on the band grid (within 1e-9).
  static WarpMap identity(double sample_rate, double b);

  // Rebuild from serialized fields, bypassing the root find.
  static WarpMap from_fields(Kind kind, double f0, double k, double sample_rate,
                             double b, double nu_in, double nu_out,
                             double nu_top, double slope_lo, double slope_hi,
                             std::int32_t top_band);

  double eval(double nu) const;
  double eval_inverse(double f) const;
  double eval_derivative(double nu) const;

  Kind kind() const { return kind_; }
  double f0() const { return f0_; }
  double k() const { return k_; }
  double sample_rate() const { return sample_rate_; }
  double band_spacing() const { return b_; }
  double nu_in() const { return nu_in_; }
  double nu_out() const { return nu_out_; }
  double nu_top() const { return nu_top_; }
  double f_in() const { return f_in_; }
  double f_out() const { return f_out_; }
  double slope_lo() const { return slope_lo_; }
  double slope_hi() const { return slope_hi_; }
  // Grid index q with theta(q*b) = SR/2.
  std::int32_t top_band() const { return top_band_; }

 private:
  WarpMap() = default;

  Kind kind_ = Kind::Exponential;
  double f0_ = 0, k_ = 0, sample_rate_ = 0, b_ = 0;
  double nu_in_ = 0, nu_out_ = 0, nu_top_ = 0;
  double f_in_ = 0, f_out_ = 0;
  double slope_lo_ = 0, slope_hi_ = 0;
  std::int32_t top_band_ = 0;
};

}  // namespace wgabor

#endif  // WGABOR_CORE_WARPMAP_HPP
