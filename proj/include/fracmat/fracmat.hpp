// Copyright 2026 The Authors.
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

// Umbrella header for the fracmat library.

#include "fracmat/certification.hpp"
#include "fracmat/element_set.hpp"
#include "fracmat/errors.hpp"
#include "fracmat/fmm.hpp"
#include "fracmat/formal_sum.hpp"
#include "fracmat/instance.hpp"
#include "fracmat/io.hpp"
#include "fracmat/lp.hpp"
#include "fracmat/matroid.hpp"
#include "fracmat/properties.hpp"
#include "fracmat/rational.hpp"
#include "fracmat/sweep.hpp"
#include "fracmat/weighted_solver.hpp"
