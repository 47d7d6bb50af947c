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

#if defined( QDPC_HAVE_AVX2 )

#include <immintrin.h>

namespace qdpc::kernels {

namespace {

void ShrinkAniso( double const* v, double t, double* out, std::size_t n ) {
   __m256d const tv = _mm256_set1_pd( t );
   __m256d const zero = _mm256_setzero_pd();
   __m256d const sign_mask = _mm256_set1_pd( -0.0 );
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      __m256d const x = _mm256_loadu_pd( v + i );
      __m256d const a = _mm256_sub_pd( _mm256_andnot_pd( sign_mask, x ), tv );
      __m256d const m = _mm256_max_pd( a, zero );
      _mm256_storeu_pd( out + i, _mm256_or_pd( m, _mm256_and_pd( sign_mask, x )));
   }
   for( ; i < n; ++i ) {
      out[ i ] = ShrinkAnisoOne( v[ i ], t );
   }
}

void AccumulateSquares( double* acc, double const* x, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      __m256d const xv = _mm256_loadu_pd( x + i );
      _mm256_storeu_pd( acc + i, _mm256_add_pd( _mm256_loadu_pd( acc + i ), _mm256_mul_pd( xv, xv )));
   }
   for( ; i < n; ++i ) {
      acc[ i ] = acc[ i ] + x[ i ] * x[ i ];
   }
}

void GroupShrinkScale( double const* sum_sq, double const* x, double t, double* out, std::size_t n ) {
   __m256d const tv = _mm256_set1_pd( t );
   __m256d const zero = _mm256_setzero_pd();
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      __m256d const m = _mm256_sqrt_pd( _mm256_loadu_pd( sum_sq + i ));
      __m256d const a = _mm256_max_pd( _mm256_sub_pd( m, tv ), zero );
      __m256d const positive = _mm256_cmp_pd( m, zero, _CMP_GT_OQ );
      __m256d const ratio = _mm256_and_pd( _mm256_div_pd( a, m ), positive );
      _mm256_storeu_pd( out + i, _mm256_mul_pd( _mm256_loadu_pd( x + i ), ratio ));
   }
   for( ; i < n; ++i ) {
      out[ i ] = x[ i ] * GroupShrinkRatio( sum_sq[ i ], t );
   }
}

inline void SubRows( double const* a, double const* b, double* out, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      _mm256_storeu_pd( out + i, _mm256_sub_pd( _mm256_loadu_pd( a + i ), _mm256_loadu_pd( b + i )));
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
   for( ; i + 4 <= n; i += 4 ) {
      _mm256_storeu_pd( out + i, _mm256_add_pd( _mm256_loadu_pd( a + i ), _mm256_loadu_pd( b + i )));
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
   for( ; i + 4 <= n; i += 4 ) {
      __m256d const s = _mm256_add_pd( _mm256_loadu_pd( a + i ), _mm256_loadu_pd( b + i ));
      _mm256_storeu_pd( out + i, _mm256_sub_pd( s, _mm256_loadu_pd( c + i )));
   }
   for( ; i < n; ++i ) {
      out[ i ] = ( a[ i ] + b[ i ] ) - c[ i ];
   }
}

// Two complex numbers per register: [re0, im0, re1, im1].

void ConjMulAcc( double* acc, double const* a, double const* b, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      __m256d const av = _mm256_loadu_pd( a + 2 * i );
      __m256d const bv = _mm256_loadu_pd( b + 2 * i );
      __m256d const p1 = _mm256_mul_pd( av, bv );                              // ar br, ai bi
      __m256d const p2 = _mm256_mul_pd( av, _mm256_permute_pd( bv, 0x5 ));     // ar bi, ai br
      __m256d const re = _mm256_hadd_pd( p1, p1 );
      __m256d const im = _mm256_hsub_pd( p2, p2 );
      __m256d const z = _mm256_blend_pd( re, im, 0xA );
      _mm256_storeu_pd( acc + 2 * i, _mm256_add_pd( _mm256_loadu_pd( acc + 2 * i ), z ));
   }
   for( ; i < n; ++i ) {
      double const ar = a[ 2 * i ], ai = a[ 2 * i + 1 ];
      double const br = b[ 2 * i ], bi = b[ 2 * i + 1 ];
      acc[ 2 * i ] = acc[ 2 * i ] + ( ar * br + ai * bi );
      acc[ 2 * i + 1 ] = acc[ 2 * i + 1 ] + ( ar * bi - ai * br );
   }
}

void CMul( double const* a, double const* b, double* out, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      __m256d const av = _mm256_loadu_pd( a + 2 * i );
      __m256d const bv = _mm256_loadu_pd( b + 2 * i );
      __m256d const p1 = _mm256_mul_pd( av, bv );
      __m256d const p2 = _mm256_mul_pd( av, _mm256_permute_pd( bv, 0x5 ));
      __m256d const re = _mm256_hsub_pd( p1, p1 );
      __m256d const im = _mm256_hadd_pd( p2, p2 );
      _mm256_storeu_pd( out + 2 * i, _mm256_blend_pd( re, im, 0xA ));
   }
   for( ; i < n; ++i ) {
      double const ar = a[ 2 * i ], ai = a[ 2 * i + 1 ];
      double const br = b[ 2 * i ], bi = b[ 2 * i + 1 ];
      out[ 2 * i ] = ar * br - ai * bi;
      out[ 2 * i + 1 ] = ar * bi + ai * br;
   }
}

void Abs2Acc( double* acc, double const* a, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      __m256d const lo = _mm256_loadu_pd( a + 2 * i );
      __m256d const hi = _mm256_loadu_pd( a + 2 * i + 4 );
      // hadd interleaves as [c0, c2, c1, c3]
      __m256d const s = _mm256_hadd_pd( _mm256_mul_pd( lo, lo ), _mm256_mul_pd( hi, hi ));
      __m256d const ordered = _mm256_permute4x64_pd( s, 0xD8 );
      _mm256_storeu_pd( acc + i, _mm256_add_pd( _mm256_loadu_pd( acc + i ), ordered ));
   }
   for( ; i < n; ++i ) {
      double const ar = a[ 2 * i ], ai = a[ 2 * i + 1 ];
      acc[ i ] = acc[ i ] + ( ar * ar + ai * ai );
   }
}

inline __m256d DuplicatePair( double const* d ) {
   return _mm256_permute4x64_pd( _mm256_castpd128_pd256( _mm_loadu_pd( d )), 0x50 );
}

void DivReal( double const* z, double const* d, double* out, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      _mm256_storeu_pd( out + 2 * i, _mm256_div_pd( _mm256_loadu_pd( z + 2 * i ), DuplicatePair( d + i )));
   }
   for( ; i < n; ++i ) {
      out[ 2 * i ] = z[ 2 * i ] / d[ i ];
      out[ 2 * i + 1 ] = z[ 2 * i + 1 ] / d[ i ];
   }
}

void ScaleReal( double const* z, double const* r, double* out, std::size_t n ) {
   std::size_t i = 0;
   for( ; i + 2 <= n; i += 2 ) {
      _mm256_storeu_pd( out + 2 * i, _mm256_mul_pd( _mm256_loadu_pd( z + 2 * i ), DuplicatePair( r + i )));
   }
   for( ; i < n; ++i ) {
      out[ 2 * i ] = z[ 2 * i ] * r[ i ];
      out[ 2 * i + 1 ] = z[ 2 * i + 1 ] * r[ i ];
   }
}

double Dot( double const* a, double const* b, std::size_t n ) {
   __m256d acc = _mm256_setzero_pd();
   std::size_t i = 0;
   for( ; i + 4 <= n; i += 4 ) {
      acc = _mm256_add_pd( acc, _mm256_mul_pd( _mm256_loadu_pd( a + i ), _mm256_loadu_pd( b + i )));
   }
   alignas( 32 ) double lane[ 4 ];
   _mm256_store_pd( lane, acc );
   DotTail( lane, a + i, b + i, n - i );
   return CombineLanes( lane );
}

KernelTable const kAvx2Table{
      "avx2",
      ShrinkAniso, AccumulateSquares, GroupShrinkScale,
      DiffX, DiffY, DiffXAdjoint, DiffYAdjoint,
      Add, Sub, AddSub,
      ConjMulAcc, CMul, Abs2Acc, DivReal, ScaleReal,
      Dot,
};

} // namespace

KernelTable const* detail::Avx2Table() {
   return &kAvx2Table;
}

} // namespace qdpc::kernels

#endif
