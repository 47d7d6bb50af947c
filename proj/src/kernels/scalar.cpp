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
#include "kernels_impl.hpp"

#include <cmath>

namespace qdpc::kernels {

namespace {

void ShrinkAniso( double const* v, double t, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      out[ i ] = ShrinkAnisoOne( v[ i ], t );
   }
}

void AccumulateSquares( double* acc, double const* x, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      acc[ i ] = acc[ i ] + x[ i ] * x[ i ];
   }
}

void GroupShrinkScale( double const* sum_sq, double const* x, double t, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      out[ i ] = x[ i ] * GroupShrinkRatio( sum_sq[ i ], t );
   }
}

void DiffX( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      double const* row = in + l * width;
      double* dst = out + l * width;
      for( std::size_t k = 0; k + 1 < width; ++k ) {
         dst[ k ] = row[ k + 1 ] - row[ k ];
      }
      dst[ width - 1 ] = row[ 0 ] - row[ width - 1 ];
   }
}

void DiffY( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      double const* row = in + l * width;
      double const* next = in + (( l + 1 ) % height ) * width;
      double* dst = out + l * width;
      for( std::size_t k = 0; k < width; ++k ) {
         dst[ k ] = next[ k ] - row[ k ];
      }
   }
}

void DiffXAdjoint( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      double const* row = in + l * width;
      double* dst = out + l * width;
      dst[ 0 ] = row[ width - 1 ] - row[ 0 ];
      for( std::size_t k = 1; k < width; ++k ) {
         dst[ k ] = row[ k - 1 ] - row[ k ];
      }
   }
}

void DiffYAdjoint( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      double const* row = in + l * width;
      double const* prev = in + (( l + height - 1 ) % height ) * width;
      double* dst = out + l * width;
      for( std::size_t k = 0; k < width; ++k ) {
         dst[ k ] = prev[ k ] - row[ k ];
      }
   }
}

void Add( double const* a, double const* b, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      out[ i ] = a[ i ] + b[ i ];
   }
}

void Sub( double const* a, double const* b, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      out[ i ] = a[ i ] - b[ i ];
   }
}

void AddSub( double const* a, double const* b, double const* c, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      out[ i ] = ( a[ i ] + b[ i ] ) - c[ i ];
   }
}

void ConjMulAcc( double* acc, double const* a, double const* b, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      double const ar = a[ 2 * i ], ai = a[ 2 * i + 1 ];
      double const br = b[ 2 * i ], bi = b[ 2 * i + 1 ];
      acc[ 2 * i ] = acc[ 2 * i ] + ( ar * br + ai * bi );
      acc[ 2 * i + 1 ] = acc[ 2 * i + 1 ] + ( ar * bi - ai * br );
   }
}

void CMul( double const* a, double const* b, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      double const ar = a[ 2 * i ], ai = a[ 2 * i + 1 ];
      double const br = b[ 2 * i ], bi = b[ 2 * i + 1 ];
      out[ 2 * i ] = ar * br - ai * bi;
      out[ 2 * i + 1 ] = ar * bi + ai * br;
   }
}

void Abs2Acc( double* acc, double const* a, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      double const ar = a[ 2 * i ], ai = a[ 2 * i + 1 ];
      acc[ i ] = acc[ i ] + ( ar * ar + ai * ai );
   }
}

void DivReal( double const* z, double const* d, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      out[ 2 * i ] = z[ 2 * i ] / d[ i ];
      out[ 2 * i + 1 ] = z[ 2 * i + 1 ] / d[ i ];
   }
}

void ScaleReal( double const* z, double const* r, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      out[ 2 * i ] = z[ 2 * i ] * r[ i ];
      out[ 2 * i + 1 ] = z[ 2 * i + 1 ] * r[ i ];
   }
}

double Dot( double const* a, double const* b, std::size_t n ) {
   double lane[ 4 ] = { 0.0, 0.0, 0.0, 0.0 };
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      for( std::size_t j = 0; j < 4; ++j ) {
         lane[ j ] = lane[ j ] + a[ i + j ] * b[ i + j ];
      }
   }
   DotTail( lane, a + i, b + i, n - i );
   return CombineLanes( lane );
}

} // namespace

KernelTable const& Scalar() {
   static KernelTable const table{
         "scalar",
         ShrinkAniso, AccumulateSquares, GroupShrinkScale,
         DiffX, DiffY, DiffXAdjoint, DiffYAdjoint,
         Add, Sub, AddSub,
         ConjMulAcc, CMul, Abs2Acc, DivReal, ScaleReal,
         Dot,
   };
   return table;
}

} // namespace qdpc::kernels
