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

#include "wtasep/instrumentation.hpp"

#include <atomic>

namespace wtasep::instrumentation {
namespace {

std::atomic<std::uint64_t> g_hash_calls{0};

}  // namespace

std::uint64_t hash_calls() noexcept { return g_hash_calls.load(std::memory_order_relaxed); }
void reset_hash_calls() noexcept { g_hash_calls.store(0, std::memory_order_relaxed); }
void record_hash_call() noexcept { g_hash_calls.fetch_add(1, std::memory_order_relaxed); }

}  // namespace wtasep::instrumentation
