// Copyright 2026 The qosmech Authors
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

#ifndef QOSMECH_QOSMECH_HPP
#define QOSMECH_QOSMECH_HPP

#include "qosmech/error.hpp"
#include "qosmech/format.hpp"
#include "qosmech/mechanisms.hpp"
#include "qosmech/overbooking.hpp"
#include "qosmech/probability.hpp"
#include "qosmech/rng.hpp"
#include "qosmech/simulation.hpp"
#include "qosmech/stats.hpp"
#include "qosmech/verification.hpp"

#endif // QOSMECH_QOSMECH_HPP
