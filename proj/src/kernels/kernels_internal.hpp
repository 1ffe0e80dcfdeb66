// Copyright 2026 The nvsense Authors
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

#ifndef NVSENSE_SRC_KERNELS_INTERNAL_HPP_
#define NVSENSE_SRC_KERNELS_INTERNAL_HPP_

#include "nvsense/kernels.hpp"

namespace nvsense::kernels {

namespace cephes {
constexpr double kFourOverPi = 1.27323954473516268615;
constexpr double kDP1 = 7.85398125648498535156E-1;
constexpr double kDP2 = 3.77489470793079817668E-8;
constexpr double kDP3 = 2.69515142907905952645E-15;
constexpr double kSin[6] = {
    1.58962301576546568060E-10, -2.50507477628578072866E-8,
    2.75573136213857245213E-6,  -1.98412698295895385996E-4,
    8.33333333332211858878E-3,  -1.66666666666666307295E-1};
constexpr double kCos[6] = {
    -1.13585365213876817300E-11, 2.08757008419747316778E-9,
    -2.75573141792967388112E-7,  2.48015872888517045348E-5,
    -1.38888888888730564116E-3,  4.16666666666665929218E-2};
}  // namespace cephes

namespace scalar {
extern const KernelTable kTable;
}
#if defined(NVSENSE_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(NVSENSE_HAVE_NEON)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace nvsense::kernels

#endif  // NVSENSE_SRC_KERNELS_INTERNAL_HPP_
