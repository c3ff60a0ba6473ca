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

#ifndef SG_SG_HPP_
#define SG_SG_HPP_

#include "sg/bellman.hpp"
#include "sg/certify.hpp"
#include "sg/evaluate.hpp"
#include "sg/game.hpp"
#include "sg/json_io.hpp"
#include "sg/random.hpp"
#include "sg/reductions/copy.hpp"
#include "sg/reductions/discount.hpp"
#include "sg/reductions/gadgets.hpp"
#include "sg/reductions/hamiltonian.hpp"
#include "sg/solvers/backward_induction.hpp"
#include "sg/solvers/brouwer.hpp"
#include "sg/solvers/cycles.hpp"
#include "sg/solvers/enumerate.hpp"
#include "sg/solvers/lp.hpp"
#include "sg/solvers/result.hpp"
#include "sg/solvers/strategy_iteration.hpp"
#include "sg/threads.hpp"

#endif  // SG_SG_HPP_
