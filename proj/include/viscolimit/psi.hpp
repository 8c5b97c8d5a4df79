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

#ifndef VISCOLIMIT_PSI_HPP_
#define VISCOLIMIT_PSI_HPP_

#include <string>
#include <vector>

namespace viscolimit {

/// Generator psi(s) of a weak entropy eta^psi = int psi(s) chi(rho, u - s) ds.
class TestFunctionPsi {
 public:
  enum class Kind { kCompact, kQuadratic, kSignedQuadratic, kConstant, kLinear };

  /// C^2 bump C ((s-a)(b-s))^3 on [a, b], scaled to peak at `height`.
  static TestFunctionPsi compact(double a, double b, double height = 1.0);
  /// (1/2) s^2.
  static TestFunctionPsi quadratic();
  /// (1/2) s |s|.
  static TestFunctionPsi signed_quadratic();
  static TestFunctionPsi constant(double c = 1.0);
  /// s.
  static TestFunctionPsi linear();

  Kind kind() const { return kind_; }
  bool is_compact() const { return kind_ == Kind::kCompact; }
  double z_star() const { return a_; }  // support bounds when compact
  double w_star() const { return b_; }
  std::string name() const;

  double value(double s) const;
  double d1(double s) const;
  double d2(double s) const;
  /// Points where psi fails to be C^3 (quadrature breakpoints).
  std::vector<double> kinks() const;

 private:
  Kind kind_ = Kind::kConstant;
  double a_ = 0.0, b_ = 0.0, scale_ = 1.0;
};

}  // namespace viscolimit

#endif  // VISCOLIMIT_PSI_HPP_
