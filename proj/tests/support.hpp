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

// Hand-rolled generators and brute-force oracles shared by the test binaries.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "qdpc/field.hpp"
#include "qdpc/random.hpp"

namespace qdpc::test {

inline Rng MakeRng( std::uint64_t seed ) {
   return Rng( DeriveSeed( { seed, 0x7E57ull } ));
}

inline double Uniform( Rng& rng, double lo = -1.0, double hi = 1.0 ) {
   return std::uniform_real_distribution< double >( lo, hi )( rng );
}

inline std::size_t UniformIndex( Rng& rng, std::size_t lo, std::size_t hi ) {
   return std::uniform_int_distribution< std::size_t >( lo, hi )( rng );
}

inline Shape RandomShape( Rng& rng, std::size_t lo = 4, std::size_t hi = 24 ) {
   return { UniformIndex( rng, lo, hi ), UniformIndex( rng, lo, hi ) };
}

inline RealField RandomField( Shape shape, Rng& rng, double scale = 1.0 ) {
   RealField f( shape );
   std::normal_distribution< double > n( 0.0, scale );
   for( double& v : f ) v = n( rng );
   return f;
}

inline ComplexField RandomComplexField( Shape shape, Rng& rng ) {
   ComplexField f( shape );
   std::normal_distribution< double > n( 0.0, 1.0 );
   for( auto& v : f ) v = { n( rng ), n( rng ) };
   return f;
}

// O((WH)^2) DFT with the library's sign and scaling conventions.
inline ComplexField DirectDft( ComplexField const& f, int sign ) {
   Shape const s = f.shape();
   ComplexField out( s );
   double const tau = 2.0 * std::numbers::pi;
   for( std::size_t v = 0; v < s.height; ++v ) {
      for( std::size_t u = 0; u < s.width; ++u ) {
         std::complex< double > acc = 0.0;
         for( std::size_t l = 0; l < s.height; ++l ) {
            for( std::size_t k = 0; k < s.width; ++k ) {
               double const phase = sign * tau * ( static_cast< double >( u * k ) / static_cast< double >( s.width ) +
                                                   static_cast< double >( v * l ) / static_cast< double >( s.height ));
               acc += f( k, l ) * std::polar( 1.0, phase );
            }
         }
         out( u, v ) = acc;
      }
   }
   return out;
}

inline double MaxAbsDiff( ComplexField const& a, ComplexField const& b ) {
   double m = 0.0;
   for( std::size_t i = 0; i < a.size(); ++i ) m = std::max( m, std::abs( a[ i ] - b[ i ] ));
   return m;
}

inline double SupNorm( RealField const& f ) {
   double m = 0.0;
   for( double v : f ) m = std::max( m, std::fabs( v ));
   return m;
}

inline double SupNorm( ComplexField const& f ) {
   double m = 0.0;
   for( auto const& v : f ) m = std::max( m, std::abs( v ));
   return m;
}

inline std::size_t Wrap( std::ptrdiff_t i, std::size_t n ) {
   auto const m = static_cast< std::ptrdiff_t >( n );
   return static_cast< std::size_t >((( i % m ) + m ) % m );
}

} // namespace qdpc::test
