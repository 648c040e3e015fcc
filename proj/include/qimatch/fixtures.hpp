// Copyright 2026 The qimatch Authors. All Rights Reserved.
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

#include "qimatch/image.hpp"

namespace qimatch::fixtures {

// 4x4, 8-bit. The 2x2 block at (1, 1) equals worked_example_small().
Image worked_example_big();

// 2x2, 8-bit.
Image worked_example_small();

}  // namespace qimatch::fixtures
