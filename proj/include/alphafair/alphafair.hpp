// Copyright 2026 The alphafair Authors
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

#ifndef ALPHAFAIR_ALPHAFAIR_HPP
#define ALPHAFAIR_ALPHAFAIR_HPP

#include "alphafair/bounds.hpp"
#include "alphafair/common.hpp"
#include "alphafair/experiments.hpp"
#include "alphafair/fdadmm.hpp"
#include "alphafair/generator.hpp"
#include "alphafair/instance.hpp"
#include "alphafair/instance_io.hpp"
#include "alphafair/oracle.hpp"
#include "alphafair/partition.hpp"
#include "alphafair/subproblem.hpp"

#endif  // ALPHAFAIR_ALPHAFAIR_HPP
