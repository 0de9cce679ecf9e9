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

#include "qmat/budget.hpp"
#include "qmat/census.hpp"
#include "qmat/decompose.hpp"
#include "qmat/dsum.hpp"
#include "qmat/error.hpp"
#include "qmat/field.hpp"
#include "qmat/operators.hpp"
#include "qmat/oracle.hpp"
#include "qmat/parallel.hpp"
#include "qmat/spec_io.hpp"
#include "qmat/subspace.hpp"
#include "qmat/zflats.hpp"
