// Copyright 2026 The weldtree Authors
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

#pragma once

#include "weldtree/address.hpp"
#include "weldtree/circuit.hpp"
#include "weldtree/classical_sim.hpp"
#include "weldtree/color.hpp"
#include "weldtree/decomposition.hpp"
#include "weldtree/graph.hpp"
#include "weldtree/hardness.hpp"
#include "weldtree/oracle.hpp"
#include "weldtree/parallel.hpp"
#include "weldtree/random_circuit.hpp"
#include "weldtree/rng.hpp"
#include "weldtree/simulator.hpp"
#include "weldtree/sparse_state.hpp"
#include "weldtree/walk.hpp"

namespace weldtree {

inline constexpr const char *kVersion = "0.1.0";

}  // namespace weldtree
