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

#include "viscolimit/psi.hpp"

#include <cmath>
#include <sstream>

#include "viscolimit/error.hpp"

namespace viscolimit {

TestFunctionPsi TestFunctionPsi::compact(double a, double b, double height) {
  require(b > a, ErrorCode::kInvalidArgument, "psi: compact support needs a < b");
  TestFunctionPsi p;
  p.kind_ = Kind::kCompact;
  p.a_ = a;
  p.b_ = b;
  p.scale_ = height * std::pow(2.0 / (b - a), 6);
  return p;
}

TestFunctionPsi TestFunctionPsi::quadratic() {
  TestFunctionPsi p;
  p.kind_ = Kind::kQuadratic;
  return p;
}

TestFunctionPsi TestFunctionPsi::signed_quadratic() {
  TestFunctionPsi p;
  p.kind_ = Kind::kSignedQuadratic;
  return p;
}

TestFunctionPsi TestFunctionPsi::constant(double c) {
  TestFunctionPsi p;
  p.kind_ = Kind::kConstant;
  p.scale_ = c;
  return p;
}

TestFunctionPsi TestFunctionPsi::linear() {
  TestFunctionPsi p;
  p.kind_ = Kind::kLinear;
  return p;
}

std::string TestFunctionPsi::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kCompact: os << "compact[" << a_ << "," << b_ << "]"; break;
    case Kind::kQuadratic: os << "half_s_squared"; break;
    case Kind::kSignedQuadratic: os << "half_s_abs_s"; break;
    case Kind::kConstant: os << "constant(" << scale_ << ")"; break;
    case Kind::kLinear: os << "linear"; break;
  }
  return os.str();
}

double TestFunctionPsi::value(double s) const {
  switch (kind_) {
    case Kind::kCompact: {
      if (!(s > a_ && s < b_)) return 0.0;
      const double g = (s - a_) * (b_ - s);
      return scale_ * g * g * g;
    }
    case Kind::kQuadratic: return 0.5 * s * s;
    case Kind::kSignedQuadratic: return 0.5 * s * std::abs(s);
    case Kind::kConstant: return scale_;
    case Kind::kLinear: return s;
  }
  return 0.0;
}

double TestFunctionPsi::d1(double s) const {
  switch (kind_) {
    case Kind::kCompact: {
      if (!(s > a_ && s < b_)) return 0.0;
      const double g = (s - a_) * (b_ - s);
      return 3.0 * scale_ * g * g * (a_ + b_ - 2.0 * s);
    }
    case Kind::kQuadratic: return s;
    case Kind::kSignedQuadratic: return std::abs(s);
    case Kind::kConstant: return 0.0;
    case Kind::kLinear: return 1.0;
  }
  return 0.0;
}

double TestFunctionPsi::d2(double s) const {
  switch (kind_) {
    case Kind::kCompact: {
      if (!(s > a_ && s < b_)) return 0.0;
      const double g = (s - a_) * (b_ - s), gp = a_ + b_ - 2.0 * s;
      return scale_ * (6.0 * g * gp * gp - 6.0 * g * g);
    }
    case Kind::kQuadratic: return 1.0;
    case Kind::kSignedQuadratic: return (s > 0) - (s < 0);
    case Kind::kConstant:
    case Kind::kLinear: return 0.0;
  }
  return 0.0;
}

std::vector<double> TestFunctionPsi::kinks() const {
  if (kind_ == Kind::kCompact) return {a_, b_};
  if (kind_ == Kind::kSignedQuadratic) return {0.0};
  return {};
}

}  // namespace viscolimit
