// Copyright 2026 The PBC Compiler Authors
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

#pragma once

#include "pbc/basis.hpp"
#include "pbc/bench.hpp"
#include "pbc/circuit.hpp"
#include "pbc/circuit_io.hpp"
#include "pbc/emit.hpp"
#include "pbc/engine.hpp"
#include "pbc/gadgetize.hpp"
#include "pbc/hybrid.hpp"
#include "pbc/pauli.hpp"
#include "pbc/peephole.hpp"
#include "pbc/rng.hpp"
#include "pbc/statevector.hpp"
