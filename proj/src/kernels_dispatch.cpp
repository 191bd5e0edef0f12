// Copyright 2026 The vqebench Authors.
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

#include "vqe/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace vqe::kernels {

#if defined(VQE_HAVE_AVX2_BUILD)
const KernelSet& avx2_kernels();  // defined in kernels_avx2.cpp
#endif

namespace {

bool cpu_has_avx2() {
#if defined(VQE_HAVE_AVX2_BUILD)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const KernelSet* default_set() {
#if defined(VQE_HAVE_AVX2_BUILD)
    if (cpu_has_avx2()) return &avx2_kernels();
#endif
    return &scalar_kernels();
}

const KernelSet* startup_set() {
    if (const char* env = std::getenv("VQE_KERNELS")) {
        const std::string want(env);
        for (const KernelSet* s : available_kernels()) {
            if (want == s->name) return s;
        }
    }
    return default_set();
}

std::atomic<const KernelSet*>& active_slot() {
    static std::atomic<const KernelSet*> slot{startup_set()};
    return slot;
}

}  // namespace

std::vector<const KernelSet*> available_kernels() {
    std::vector<const KernelSet*> sets{&scalar_kernels()};
#if defined(VQE_HAVE_AVX2_BUILD)
    if (cpu_has_avx2()) sets.push_back(&avx2_kernels());
#endif
    return sets;
}

const KernelSet& active_kernels() { return *active_slot().load(std::memory_order_relaxed); }

bool set_active_kernels(std::string_view name) {
    if (name == "auto") {
        active_slot().store(default_set(), std::memory_order_relaxed);
        return true;
    }
    for (const KernelSet* s : available_kernels()) {
        if (name == s->name) {
            active_slot().store(s, std::memory_order_relaxed);
            return true;
        }
    }
    return false;
}

}  // namespace vqe::kernels
