// Copyright 2026 The mrbench Authors
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

// Umbrella header.

#pragma once

#include "mrbench/common.hpp"
#include "mrbench/dwa.hpp"
#include "mrbench/global_planner.hpp"
#include "mrbench/grid_io.hpp"
#include "mrbench/gridmap.hpp"
#include "mrbench/harness.hpp"
#include "mrbench/local_planner.hpp"
#include "mrbench/metrics.hpp"
#include "mrbench/navlog_io.hpp"
#include "mrbench/planner_config_io.hpp"
#include "mrbench/report.hpp"
#include "mrbench/robot.hpp"
#include "mrbench/scenario_io.hpp"
#include "mrbench/standard_suite.hpp"
#include "mrbench/suite.hpp"
#include "mrbench/svg.hpp"
#include "mrbench/teb.hpp"
#include "mrbench/world.hpp"
#include "mrbench/world_gen.hpp"
