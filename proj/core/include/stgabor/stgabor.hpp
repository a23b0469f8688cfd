// Copyright 2026 The stgabor Authors.
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

#ifndef STGABOR_STGABOR_HPP_
#define STGABOR_STGABOR_HPP_

#include "stgabor/classify.hpp"
#include "stgabor/convolve.hpp"
#include "stgabor/error.hpp"
#include "stgabor/features.hpp"
#include "stgabor/io.hpp"
#include "stgabor/kernel.hpp"
#include "stgabor/stimuli.hpp"
#include "stgabor/tables.hpp"
#include "stgabor/volume.hpp"

#endif  // STGABOR_STGABOR_HPP_
