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

#ifndef VISCOLIMIT_ERROR_HPP_
#define VISCOLIMIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace viscolimit {

/// Error categories shared by the C++ core and the C API.
///
/// The numeric values are part of the C ABI (see viscolimit.h) and of the
/// CLI exit-code mapping, so they must not be renumbered.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,   // precondition violated by the caller
  kDomain = 2,            // parameters outside the admissible set
  kConfig = 3,            // config file parse / validation problem
  kSolverFailure = 4,     // positivity loss, CFL violation, wave escape
  kFalsified = 5,         // a checked invariant did not hold
  kIo = 6,
  kInternal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace viscolimit

#endif  // VISCOLIMIT_ERROR_HPP_
