// Copyright 2026 The mbq Authors
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

#include "mbq/clifford.hpp"
#include "mbq/compiler/circuit.hpp"
#include "mbq/compiler/compile.hpp"
#include "mbq/compiler/equivalence.hpp"
#include "mbq/compiler/executor.hpp"
#include "mbq/compiler/parser.hpp"
#include "mbq/compiler/program.hpp"
#include "mbq/core.hpp"
#include "mbq/densecoding.hpp"
#include "mbq/gadgets.hpp"
#include "mbq/gates.hpp"
#include "mbq/observable.hpp"
#include "mbq/pauli.hpp"
#include "mbq/pauliframe.hpp"
#include "mbq/rng.hpp"
#include "mbq/statevec.hpp"
#include "mbq/strategy.hpp"
