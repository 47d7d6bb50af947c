/*
 * qdpc - quantitative differential phase contrast reconstruction
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Per-element definitions shared by every backend so tails and scalar
// reference agree exactly with the vector bodies.

#include <cmath>
#include <cstddef>

#include "qdpc/kernels.hpp"

namespace qdpc::kernels {

inline double ShrinkAnisoOne( double v, double t ) {
   double const a = std::fabs( v ) - t;
   double const m = a > 0.0 ? a : 0.0;
   return std::copysign( m, v );
}

inline double GroupShrinkRatio( double sum_sq, double t ) {
   double const m = std::sqrt( sum_sq );
   if( !( m > 0.0 )) {
      return 0.0;
   }
   double const a = m - t;
   return ( a > 0.0 ? a : 0.0 ) / m;
}

inline void DotTail( double* lane, double const* a, double const* b, std::size_t rest ) {
   for( std::size_t j = 0; j < rest; ++j ) {
      lane[ j ] = lane[ j ] + a[ j ] * b[ j ];
   }
}

inline double CombineLanes( double const* lane ) {
   return ( lane[ 0 ] + lane[ 1 ] ) + ( lane[ 2 ] + lane[ 3 ] );
}

namespace detail {
KernelTable const* Avx2Table();   // defined only when compiled with AVX2 support
KernelTable const* NeonTable();
} // namespace detail

} // namespace qdpc::kernels
