// SPDX-License-Identifier: Apache-2.0
//
// a2gsim - spatially consistent air-to-ground channel simulator
// Copyright (C) 2026 The a2gsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "a2g/campaign.hpp"
#include "a2g/channel.hpp"
#include "a2g/config.hpp"
#include "a2g/ecdf.hpp"
#include "a2g/geometry.hpp"
#include "a2g/io.hpp"
#include "a2g/los_model.hpp"
#include "a2g/outage.hpp"
#include "a2g/ray_oracle.hpp"
#include "a2g/rng.hpp"
#include "a2g/segmenter.hpp"
