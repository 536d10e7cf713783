// Copyright 2026 the symtest authors.
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

// Umbrella header for the symtest library: multivariate two-sample testing
// by reducing H0: X = Y (in distribution) to a symmetry test on the
// one-dimensional variable
//   S = delta ||X - Y|| - (1 - delta)(eps ||X - X'|| + (1 - eps) ||Y - Y'||),
// plus an exact finite-support oracle for that reduction and a Monte Carlo
// study harness.

#pragma once

#include "symtest/construct.hpp"
#include "symtest/csv.hpp"
#include "symtest/dataset.hpp"
#include "symtest/ecdf.hpp"
#include "symtest/errors.hpp"
#include "symtest/kernels.hpp"
#include "symtest/oracle.hpp"
#include "symtest/parallel.hpp"
#include "symtest/permutation.hpp"
#include "symtest/rng.hpp"
#include "symtest/simlab.hpp"
#include "symtest/statistics.hpp"
#include "symtest/version.hpp"
