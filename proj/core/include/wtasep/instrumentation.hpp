// Copyright 2026 The wtasep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace wtasep::instrumentation {

/// Counts calls into WTA hashing (vectors hashed). Lets tests verify that a
/// cosine-mode pipeline never reaches the hash code paths.
std::uint64_t hash_calls() noexcept;
void reset_hash_calls() noexcept;
void record_hash_call() noexcept;

}  // namespace wtasep::instrumentation
