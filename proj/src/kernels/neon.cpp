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

#if defined( __aarch64__ )

#include <arm_neon.h>

namespace qdpc::kernels {

namespace {

void ShrinkAniso( double const* v, double t, double* out, std::size_t n ) {
   float64x2_t const tv = vdupq_n_f64( t );
   float64x2_t const zero = vdupq_n_f64( 0.0 );
   uint64x2_t const sign_mask = vdupq_n_u64( 0x8000000000000000ull );
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      float64x2_t const x = vld1q_f64( v + i );
      float64x2_t const a = vsubq_f64( vabsq_f64( x ), tv );
      // a > 0 ? a : 0, matching the scalar select (vmaxq differs on NaN)
      float64x2_t const m = vbslq_f64( vcgtq_f64( a, zero ), a, zero );
      uint64x2_t const bits = vorrq_u64( vreinterpretq_u64_f64( m ),
                                         vandq_u64( sign_mask, vreinterpretq_u64_f64( x )));
      vst1q_f64( out + i, vreinterpretq_f64_u64( bits ));
   }
   for( ; i < n; ++i ) {
      out[ i ] = ShrinkAnisoOne( v[ i ], t );
   }
}

void AccumulateSquares( double* acc, double const* x, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      float64x2_t const xv = vld1q_f64( x + i );
      vst1q_f64( acc + i, vaddq_f64( vld1q_f64( acc + i ), vmulq_f64( xv, xv )));
   }
   for( ; i < n; ++i ) {
      acc[ i ] = acc[ i ] + x[ i ] * x[ i ];
   }
}

void GroupShrinkScale( double const* sum_sq, double const* x, double t, double* out, std::size_t n ) {
   float64x2_t const tv = vdupq_n_f64( t );
   float64x2_t const zero = vdupq_n_f64( 0.0 );
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      float64x2_t const m = vsqrtq_f64( vld1q_f64( sum_sq + i ));
      float64x2_t const d = vsubq_f64( m, tv );
      float64x2_t const a = vbslq_f64( vcgtq_f64( d, zero ), d, zero );
      uint64x2_t const positive = vcgtq_f64( m, zero );
      float64x2_t const ratio = vbslq_f64( positive, vdivq_f64( a, m ), zero );
      vst1q_f64( out + i, vmulq_f64( vld1q_f64( x + i ), ratio ));
   }
   for( ; i < n; ++i ) {
      out[ i ] = x[ i ] * GroupShrinkRatio( sum_sq[ i ], t );
   }
}

inline void SubRows( double const* a, double const* b, double* out, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      vst1q_f64( out + i, vsubq_f64( vld1q_f64( a + i ), vld1q_f64( b + i )));
   }
   for( ; i < n; ++i ) {
      out[ i ] = a[ i ] - b[ i ];
   }
}

void DiffX( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      double const* row = in + l * width;
      double* dst = out + l * width;
      SubRows( row + 1, row, dst, width - 1 );
      dst[ width - 1 ] = row[ 0 ] - row[ width - 1 ];
   }
}

void DiffY( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      SubRows( in + (( l + 1 ) % height ) * width, in + l * width, out + l * width, width );
   }
}

void DiffXAdjoint( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      double const* row = in + l * width;
      double* dst = out + l * width;
      dst[ 0 ] = row[ width - 1 ] - row[ 0 ];
      SubRows( row, row + 1, dst + 1, width - 1 );
   }
}

void DiffYAdjoint( double const* in, double* out, std::size_t width, std::size_t height ) {
   for( std::size_t l = 0; l < height; ++l ) {
      SubRows( in + (( l + height - 1 ) % height ) * width, in + l * width, out + l * width, width );
   }
}

void Add( double const* a, double const* b, double* out, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      vst1q_f64( out + i, vaddq_f64( vld1q_f64( a + i ), vld1q_f64( b + i )));
   }
   for( ; i < n; ++i ) {
      out[ i ] = a[ i ] + b[ i ];
   }
}

void Sub( double const* a, double const* b, double* out, std::size_t n ) {
   SubRows( a, b, out, n );
}

void AddSub( double const* a, double const* b, double const* c, double* out, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      float64x2_t const s = vaddq_f64( vld1q_f64( a + i ), vld1q_f64( b + i ));
      vst1q_f64( out + i, vsubq_f64( s, vld1q_f64( c + i )));
   }
   for( ; i < n; ++i ) {
      out[ i ] = ( a[ i ] + b[ i ] ) - c[ i ];
   }
}

// One complex number per register. Negating one product before the pairwise
// add reproduces the scalar subtraction exactly.

void ConjMulAcc( double* acc, double const* a, double const* b, std::size_t n ) {
   float64x2_t const flip = { 1.0, -1.0 };
   for( std::size_t i = 0; i < n; ++i ) {
      float64x2_t const av = vld1q_f64( a + 2 * i );
      float64x2_t const bv = vld1q_f64( b + 2 * i );
      float64x2_t const p1 = vmulq_f64( av, bv );
      float64x2_t const p2 = vmulq_f64( vmulq_f64( av, vextq_f64( bv, bv, 1 )), flip );
      vst1q_f64( acc + 2 * i, vaddq_f64( vld1q_f64( acc + 2 * i ), vpaddq_f64( p1, p2 )));
   }
}

void CMul( double const* a, double const* b, double* out, std::size_t n ) {
   float64x2_t const flip = { 1.0, -1.0 };
   for( std::size_t i = 0; i < n; ++i ) {
      float64x2_t const av = vld1q_f64( a + 2 * i );
      float64x2_t const bv = vld1q_f64( b + 2 * i );
      float64x2_t const p1 = vmulq_f64( vmulq_f64( av, bv ), flip );
      float64x2_t const p2 = vmulq_f64( av, vextq_f64( bv, bv, 1 ));
      vst1q_f64( out + 2 * i, vpaddq_f64( p1, p2 ));
   }
}

void Abs2Acc( double* acc, double const* a, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      float64x2_t const lo = vld1q_f64( a + 2 * i );
      float64x2_t const hi = vld1q_f64( a + 2 * i + 2 );
      float64x2_t const s = vpaddq_f64( vmulq_f64( lo, lo ), vmulq_f64( hi, hi ));
      vst1q_f64( acc + i, vaddq_f64( vld1q_f64( acc + i ), s ));
   }
   for( ; i < n; ++i ) {
      double const ar = a[ 2 * i ], ai = a[ 2 * i + 1 ];
      acc[ i ] = acc[ i ] + ( ar * ar + ai * ai );
   }
}

void DivReal( double const* z, double const* d, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      vst1q_f64( out + 2 * i, vdivq_f64( vld1q_f64( z + 2 * i ), vdupq_n_f64( d[ i ] )));
   }
}

void ScaleReal( double const* z, double const* r, double* out, std::size_t n ) {
   for( std::size_t i = 0; i < n; ++i ) {
      vst1q_f64( out + 2 * i, vmulq_f64( vld1q_f64( z + 2 * i ), vdupq_n_f64( r[ i ] )));
   }
}

double Dot( double const* a, double const* b, std::size_t n ) {
   float64x2_t lo = vdupq_n_f64( 0.0 );
   float64x2_t hi = vdupq_n_f64( 0.0 );
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      lo = vaddq_f64( lo, vmulq_f64( vld1q_f64( a + i ), vld1q_f64( b + i )));
      hi = vaddq_f64( hi, vmulq_f64( vld1q_f64( a + i + 2 ), vld1q_f64( b + i + 2 )));
   }
   double lane[ 4 ];
   vst1q_f64( lane, lo );
   vst1q_f64( lane + 2, hi );
   DotTail( lane, a + i, b + i, n - i );
   return CombineLanes( lane );
}

KernelTable const kNeonTable{
      "neon",
      ShrinkAniso, AccumulateSquares, GroupShrinkScale,
      DiffX, DiffY, DiffXAdjoint, DiffYAdjoint,
      Add, Sub, AddSub,
      ConjMulAcc, CMul, Abs2Acc, DivReal, ScaleReal,
      Dot,
};

} // namespace

KernelTable const* detail::NeonTable() {
   return &kNeonTable;
}

} // namespace qdpc::kernels

#endif
