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

#include "core/window.hpp"

#include <cmath>
#include <stdexcept>

namespace wgabor {

namespace {

constexpr double kPi = 3.141592653589793;

// Normalized sinc, sinc(0) = 1.
double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

void check_common(double T, double b, double R, double r_min) {
  if (!(T > 0) || !(b > 0)) {
    throw std::invalid_argument("window: T and b must be positive");
  }
  if (!(R >= r_min)) {
    throw std::invalid_argument("window: overlap factor R below the minimum "
                                "for this family");
  }
}

}  // namespace

PrototypeWindow PrototypeWindow::raised_cosine(double T, double b, double R) {
  check_common(T, b, R, 3.0);
  PrototypeWindow w;
  w.kind_ = Kind::RaisedCosine;
  w.T_ = T;
  w.b_ = b;
  w.R_ = R;
  w.amp_ = std::sqrt(2.0 * b / R);
  w.C_ = 1.0;
  return w;
}

PrototypeWindow PrototypeWindow::gaussian(double T, double b, double R) {
  check_common(T, b, R, 2.0);
  PrototypeWindow w;
  w.kind_ = Kind::Gaussian;
  w.T_ = T;
  w.b_ = b;
  w.R_ = R;
  w.C_ = kGaussOlaConstant;
  w.amp_ = w.C_ * std::sqrt(kPi * b / R);
  return w;
}

double PrototypeWindow::time_eval(double t) const {
  if (kind_ == Kind::RaisedCosine) {
    if (std::abs(t) > T_ / 2.0) return 0.0;
    return amp_ * std::cos(kPi * t / T_);
  }
  const double x = kPi * t / T_;
  return amp_ * std::exp(-x * x);
}

double PrototypeWindow::freq_eval(double nu) const {
  if (kind_ == Kind::RaisedCosine) {
    const double x = nu * T_;
    return T_ * std::sqrt(b_ / (2.0 * R_)) * (sinc(x - 0.5) + sinc(x + 0.5));
  }
  const double x = nu * T_;
  return C_ * T_ * std::sqrt(b_ / R_) * std::exp(-x * x);
}

}  // namespace wgabor
