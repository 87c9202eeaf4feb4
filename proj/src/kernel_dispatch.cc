// Copyright 2026 The eosim Authors
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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "eosim/kernels.h"

namespace eosim {
namespace kernels {

namespace {

constexpr KernelTable kScalarTable{Backend::Scalar, exchange_scalar, diag_multiply_scalar};
#ifdef EOSIM_SIMD_AVX2
constexpr KernelTable kAvx2Table{Backend::Avx2, exchange_avx2, diag_multiply_avx2};
#endif
#ifdef EOSIM_SIMD_NEON
constexpr KernelTable kNeonTable{Backend::Neon, exchange_neon, diag_multiply_neon};
#endif

const KernelTable *choose_default() {
    const char *env = std::getenv("EOSIM_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) {
            return &kScalarTable;
        }
        if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::Avx2)) {
            return &table_for(Backend::Avx2);
        }
        if (std::strcmp(env, "neon") == 0 && backend_available(Backend::Neon)) {
            return &table_for(Backend::Neon);
        }
    }
    if (backend_available(Backend::Avx2)) {
        return &table_for(Backend::Avx2);
    }
    if (backend_available(Backend::Neon)) {
        return &table_for(Backend::Neon);
    }
    return &kScalarTable;
}

std::atomic<const KernelTable *> &active_slot() {
    static std::atomic<const KernelTable *> slot{choose_default()};
    return slot;
}

}  // namespace

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#ifdef EOSIM_SIMD_AVX2
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::Neon:
#ifdef EOSIM_SIMD_NEON
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable &table_for(Backend backend) {
    switch (backend) {
        case Backend::Scalar:
            return kScalarTable;
#ifdef EOSIM_SIMD_AVX2
        case Backend::Avx2:
            return kAvx2Table;
#endif
#ifdef EOSIM_SIMD_NEON
        case Backend::Neon:
            return kNeonTable;
#endif
        default:
            throw std::invalid_argument("kernel backend not compiled into this build");
    }
}

const KernelTable &active() {
    return *active_slot().load(std::memory_order_relaxed);
}

void set_active(Backend backend) {
    if (!backend_available(backend)) {
        throw std::invalid_argument("kernel backend not available on this CPU");
    }
    active_slot().store(&table_for(backend), std::memory_order_relaxed);
}

const char *backend_name(Backend backend) {
    switch (backend) {
        case Backend::Scalar:
            return "scalar";
        case Backend::Avx2:
            return "avx2";
        case Backend::Neon:
            return "neon";
    }
    return "unknown";
}

}  // namespace kernels
}  // namespace eosim
