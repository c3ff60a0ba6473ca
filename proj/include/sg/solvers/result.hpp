// Copyright 2026 The sg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SG_SOLVERS_RESULT_HPP_
#define SG_SOLVERS_RESULT_HPP_

#include <string>
#include <vector>

#include "sg/certify.hpp"
#include "sg/game.hpp"

namespace sg {

// Common solver envelope.  The certificate is always recomputed by the
// certification layer on the finished strategy, never copied from solver
// internals.  Wall time is kept for callers but deliberately left out of
// serialized reports so identical inputs produce byte-identical output.
struct SolveResult {
  std::string method;
  Strategy strategy;
  NonStationaryStrategy nonstationary;
  bool is_nonstationary = false;
  NeCertificate certificate;
  long long iterations = 0;
  double wall_time_seconds = 0.0;
  std::string outcome = "ok";  // "ok" | "no_convergence"

  // Diagnostics (populated per method).
  std::vector<double> potential_trace;   // strategy iteration
  double fixed_point_residual = 0.0;     // Brouwer iteration
  double implied_epsilon = 0.0;          // Brouwer residual-to-NE bound
  int horizon = 0;                       // backward induction
};

}  // namespace sg

#endif  // SG_SOLVERS_RESULT_HPP_
