// Copyright 2026 The viscolimit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VISCOLIMIT_QUADRATURE_HPP_
#define VISCOLIMIT_QUADRATURE_HPP_

#include <functional>
#include <span>
#include <vector>

namespace viscolimit::quad {

using Integrand = std::function<double(double)>;

/// Fixed n-point Gauss-Legendre rule on [-1, 1]; exact for degree 2n-1.
class GaussLegendre {
 public:
  explicit GaussLegendre(int n);

  int order() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      sum += weights_[i] * f(mid + half * nodes_[i]);
    return half * sum;
  }

  /// Composite rule: `panels` equal sub-intervals.
  template <typename F>
  double integrate_composite(F&& f, double a, double b, int panels) const {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int j = 0; j < panels; ++j) sum += integrate(f, a + j * h, a + (j + 1) * h);
    return sum;
  }

  /// Sums the rule over consecutive pieces of a sorted breakpoint list,
  /// each piece split into `panels` sub-intervals.
  template <typename F>
  double integrate_pieces(F&& f, std::span<const double> breaks, int panels = 1) const {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      if (breaks[i + 1] > breaks[i])
        sum += integrate_composite(f, breaks[i], breaks[i + 1], panels);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Shared 16-point rule (constructed once, thread-safe).
const GaussLegendre& gl16();

inline constexpr double kDefaultAbsTol = 1e-10;

/// Adaptive Simpson with Richardson correction; meets `abs_tol` on smooth
/// integrands. Throws kInternal if `max_depth` is exhausted with error
/// estimate still above tolerance and `strict` is set.
double adaptive_simpson(const Integrand& f, double a, double b,
                        double abs_tol = kDefaultAbsTol, int max_depth = 50,
                        bool strict = false);

/// Tanh-sinh (double-exponential) rule on [a, b] for integrands with
/// integrable endpoint singularities. The integrand receives the point x
/// and its distance to the nearer endpoint, computed without cancellation.
double tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                 double step = 1.0 / 64.0);

/// Rule selector used by configurable call sites.
struct QuadratureRule {
  enum class Kind { kGaussLegendre, kAdaptiveSimpson };
  Kind kind = Kind::kAdaptiveSimpson;
  int order = 16;                 // Gauss-Legendre points
  int panels = 1;                 // Gauss-Legendre composite panels
  double tolerance = kDefaultAbsTol;  // adaptive absolute tolerance

  double integrate(const Integrand& f, double a, double b) const;
};

}  // namespace viscolimit::quad

#endif  // VISCOLIMIT_QUADRATURE_HPP_
