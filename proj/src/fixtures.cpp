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

#include "qimatch/fixtures.hpp"

namespace qimatch::fixtures {

Image worked_example_big() {
  return Image(4, 4, 8,
               {162, 156, 161, 165,
                161, 160, 164, 166,
                161, 164, 165, 167,
                168, 165, 166, 166});
}

Image worked_example_small() { return Image(2, 2, 8, {160, 164, 164, 165}); }

}  // namespace qimatch::fixtures
