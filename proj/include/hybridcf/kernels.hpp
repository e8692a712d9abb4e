/*
 * Copyright 2026 The hybridcf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Data-parallel inner loops shared by the channel, clustering, precoding and
// rate code. Every kernel has a portable scalar reference; vector variants
// are picked once at startup from what the CPU reports, and can be pinned
// with the HYBRIDCF_SIMD environment variable (scalar | avx2 | neon).

#include <cstddef>
#include <span>
#include <string_view>

namespace hybridcf::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n) noexcept;
  // sum_i a[i]^2
  double (*sum_squares)(const double* a, std::size_t n) noexcept;
  // out[i] = (xs[i]-px)^2 + (ys[i]-py)^2 + (zs[i]-pz)^2
  void (*squared_distances)(const double* xs, const double* ys, const double* zs, std::size_t n,
                            double px, double py, double pz, double* out) noexcept;
};

bool isa_available(Isa isa) noexcept;

// Throws std::invalid_argument when the ISA is not compiled in or not
// supported by this CPU.
const KernelTable& table(Isa isa);

const KernelTable& active() noexcept;

double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a) noexcept;

// Structure-of-arrays point set, as consumed by squared_distances.
struct PointsSoA {
  std::span<const double> xs;
  std::span<const double> ys;
  std::span<const double> zs;
};

void squared_distances(const PointsSoA& points, double px, double py, double pz,
                       std::span<double> out);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum_squares(const double* a, std::size_t n) noexcept;
void squared_distances(const double* xs, const double* ys, const double* zs, std::size_t n,
                       double px, double py, double pz, double* out) noexcept;
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum_squares(const double* a, std::size_t n) noexcept;
void squared_distances(const double* xs, const double* ys, const double* zs, std::size_t n,
                       double px, double py, double pz, double* out) noexcept;
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double sum_squares(const double* a, std::size_t n) noexcept;
void squared_distances(const double* xs, const double* ys, const double* zs, std::size_t n,
                       double px, double py, double pz, double* out) noexcept;
}  // namespace neon

}  // namespace hybridcf::kernels
