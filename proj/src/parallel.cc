// Copyright 2026 The gmesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gmesim/parallel.h"

#include <cstdlib>
#include <string>

namespace gmesim {

std::size_t thread_count() {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const char *env = std::getenv("GME_SIM_THREADS");
    if (env == nullptr || *env == '\0') {
        return hw;
    }
    try {
        unsigned long v = std::stoul(env);
        return v == 0 ? hw : static_cast<std::size_t>(v);
    } catch (const std::exception &) {
        return hw;
    }
}

}  // namespace gmesim
