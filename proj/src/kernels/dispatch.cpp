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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hybridcf/kernels.hpp"

namespace hybridcf::kernels {

namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::dot, &scalar::sum_squares,
                                   &scalar::squared_distances};

#if defined(HYBRIDCF_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::dot, &avx2::sum_squares,
                                 &avx2::squared_distances};
#endif

#if defined(HYBRIDCF_HAVE_NEON)
constexpr KernelTable kNeonTable{Isa::kNeon, &neon::dot, &neon::sum_squares,
                                 &neon::squared_distances};
#endif

const KernelTable& select_table() {
  if (const char* forced = std::getenv("HYBRIDCF_SIMD")) {
    const std::string name(forced);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (name == isa_name(isa) && isa_available(isa)) return table(isa);
    }
  }
  if (isa_available(Isa::kAvx2)) return table(Isa::kAvx2);
  if (isa_available(Isa::kNeon)) return table(Isa::kNeon);
  return kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(HYBRIDCF_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(HYBRIDCF_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  }
  switch (isa) {
#if defined(HYBRIDCF_HAVE_AVX2)
    case Isa::kAvx2:
      return kAvx2Table;
#endif
#if defined(HYBRIDCF_HAVE_NEON)
    case Isa::kNeon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

const KernelTable& active() noexcept {
  static const KernelTable& selected = select_table();
  return selected;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

double sum_squares(std::span<const double> a) noexcept {
  return active().sum_squares(a.data(), a.size());
}

void squared_distances(const PointsSoA& points, double px, double py, double pz,
                       std::span<double> out) {
  const std::size_t n = points.xs.size();
  if (points.ys.size() != n || points.zs.size() != n || out.size() != n) {
    throw std::invalid_argument("squared_distances: length mismatch");
  }
  active().squared_distances(points.xs.data(), points.ys.data(), points.zs.data(), n, px, py, pz,
                             out.data());
}

}  // namespace hybridcf::kernels
