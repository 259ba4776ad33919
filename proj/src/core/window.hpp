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

#ifndef WGABOR_CORE_WINDOW_HPP
#define WGABOR_CORE_WINDOW_HPP

#include <cstdint>

namespace wgabor {

// Overlap-add constant for the Gaussian family, (2/pi)^(1/4). This is the
// exact value making the frame diagonal flat at a = T/R; it agrees with the
// conventional approximation 0.893249 to five decimals.
inline constexpr double kGaussOlaConstant = 0.8932438417380023;

/// Prototype analysis window with closed-form time and frequency evaluation.
///
/// Both families use the transform convention h_hat(nu) = Int h(t) e^(-j 2 pi
/// nu t) dt, so the pairs are exact under a numerical DFT:
///
///   raised cosine:  h(t)     = sqrt(2b/R) cos(pi t / T) on [-T/2, T/2]
///                   h_hat(v) = T sqrt(b/2R) (sinc(vT - 1/2) + sinc(vT + 1/2))
///   gaussian:       h_hat(v) = C T sqrt(b/R) e^(-v^2 T^2)
///                   h(t)     = C sqrt(pi b / R) e^(-pi^2 t^2 / T^2)
///
/// Immutable after construction; safe for unrestricted concurrent reads.
class PrototypeWindow {
 public:
  enum class Kind : std::uint8_t { RaisedCosine = 0, Gaussian = 1 };

  // T: nominal total duration (s), b: frequency shift (warped Hz),
  // R: overlap factor (>= 3 for raised cosine, >= 2 for gaussian).
  static PrototypeWindow raised_cosine(double T, double b, double R);
  static PrototypeWindow gaussian(double T, double b, double R);

  double time_eval(double t) const;
  double freq_eval(double nu) const;

  Kind kind() const { return kind_; }
  double duration() const { return T_; }
  double overlap() const { return R_; }
  double shift() const { return b_; }
  // Peak amplitude of h (the leading constant).
  double amp() const { return amp_; }
  // OLA constant; 1 for the raised cosine.
  double ola_constant() const { return C_; }

 private:
  PrototypeWindow() = default;

  Kind kind_ = Kind::Gaussian;
  double T_ = 0, b_ = 0, R_ = 0;
  double amp_ = 0;
  double C_ = 1.0;
};

}  // namespace wgabor

#endif  // WGABOR_CORE_WINDOW_HPP
