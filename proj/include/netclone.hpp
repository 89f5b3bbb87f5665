/* Copyright 2026-present The netclone-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include "netclone/baselines.hpp"
#include "netclone/client.hpp"
#include "netclone/config.hpp"
#include "netclone/csv.hpp"
#include "netclone/engine.hpp"
#include "netclone/error.hpp"
#include "netclone/experiment.hpp"
#include "netclone/model.hpp"
#include "netclone/server.hpp"
#include "netclone/stats.hpp"
#include "netclone/switch.hpp"
#include "netclone/time.hpp"
#include "netclone/workload.hpp"
