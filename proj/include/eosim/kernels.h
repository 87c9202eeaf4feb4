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

#ifndef EOSIM_KERNELS_H
#define EOSIM_KERNELS_H

#include <complex>
#include <cstddef>

// Platform detection for the vector kernels. The AVX2 path is compiled with a
// function-level target attribute so the library itself needs no -mavx2 flag;
// whether it runs is decided at startup from cpuid.
#if defined(__x86_64__) || defined(_M_X64)
#define EOSIM_SIMD_X86 1
#if defined(__GNUC__) || defined(__clang__)
#define EOSIM_SIMD_AVX2 1
#endif
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
#define EOSIM_SIMD_NEON 1
#endif

namespace eosim {
namespace kernels {

enum class Backend { Scalar, Avx2, Neon };

using ExchangeFn = void (*)(std::complex<double> *amps, size_t dim, size_t i, size_t j, std::complex<double> a,
                            std::complex<double> b);
using DiagFn = void (*)(std::complex<double> *amps, const std::complex<double> *phases, size_t dim);

struct KernelTable {
    Backend backend;
    ExchangeFn exchange;
    DiagFn diag_multiply;
};

// Mixes every amplitude pair (s, t) whose spins i and j are antiparallel:
//   x_s <- a x_s + b x_t,  x_t <- b x_s + a x_t.
// With a = (1 + e^{i theta}) / 2 and b = (1 - e^{i theta}) / 2 this is the
// exchange pulse of angle theta.
void exchange_scalar(std::complex<double> *amps, size_t dim, size_t i, size_t j, std::complex<double> a,
                     std::complex<double> b);
void diag_multiply_scalar(std::complex<double> *amps, const std::complex<double> *phases, size_t dim);

#ifdef EOSIM_SIMD_AVX2
void exchange_avx2(std::complex<double> *amps, size_t dim, size_t i, size_t j, std::complex<double> a,
                   std::complex<double> b);
void diag_multiply_avx2(std::complex<double> *amps, const std::complex<double> *phases, size_t dim);
#endif
#ifdef EOSIM_SIMD_NEON
void exchange_neon(std::complex<double> *amps, size_t dim, size_t i, size_t j, std::complex<double> a,
                   std::complex<double> b);
void diag_multiply_neon(std::complex<double> *amps, const std::complex<double> *phases, size_t dim);
#endif

bool backend_available(Backend backend);
const KernelTable &table_for(Backend backend);
/// The table used by the simulator. Chosen once from the CPU, unless the
/// EOSIM_KERNELS environment variable names a backend ("scalar", "avx2", "neon").
const KernelTable &active();
/// Overrides the active table; intended for tests and benchmarks.
void set_active(Backend backend);
const char *backend_name(Backend backend);

}  // namespace kernels
}  // namespace eosim

#endif
