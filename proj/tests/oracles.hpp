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

// Reference solvers and spatial operators for checking the library.

#include <cmath>
#include <numbers>

#include "qdpc/forward.hpp"
#include "qdpc/operators.hpp"
#include "qdpc/optics.hpp"
#include "support.hpp"

namespace qdpc::test {

inline ComplexField Conj( ComplexField h ) {
   for( auto& v : h ) v = std::conj( v );
   return h;
}

inline RealField H( RealField const& f, ComplexField const& h ) { return ApplyTransfer( f, h ); }
inline RealField Ht( RealField const& f, ComplexField const& h ) { return ApplyTransfer( f, Conj( h )); }

inline RealField Lap( RealField const& f ) {
   return GradAdjoint( Grad( f, Axis::X ), Axis::X ) + GradAdjoint( Grad( f, Axis::Y ), Axis::Y );
}

inline RealField Div( RealField const& gx, RealField const& gy ) {
   return GradAdjoint( gx, Axis::X ) + GradAdjoint( gy, Axis::Y );
}

// phi_hat = sum conj(H) s_hat / (sum |H|^2 + shift + extra_den), by direct DFTs.
inline RealField SolveByDft( DpcStack const& stack, RealField const& extra_den, double shift ) {
   Shape const s = stack.shape();
   std::vector< ComplexField > spectra;
   for( auto const& img : stack.images ) spectra.push_back( DirectDft( ToComplex( img ), -1 ));
   ComplexField phi_hat( s );
   for( std::size_t i = 0; i < s.size(); ++i ) {
      std::complex< double > num = 0.0;
      double den = shift + extra_den[ i ];
      for( std::size_t n = 0; n < stack.size(); ++n ) {
         std::complex< double > const h = stack.tfs.kernels[ n ][ i ];
         num += std::conj( h ) * spectra[ n ][ i ];
         den += std::norm( h );
      }
      phi_hat[ i ] = num / den;
   }
   ComplexField const back = DirectDft( phi_hat, +1 );
   RealField out( s );
   for( std::size_t i = 0; i < s.size(); ++i ) out[ i ] = back[ i ].real() / static_cast< double >( s.size() );
   return out;
}

// alpha |D|^2 + beta |G|^2 for the Iso-DPC penalty, G the unit-sum periodic Gaussian.
inline RealField IsoPenaltyByDft( Shape const& s, double alpha, double beta, double sigma ) {
   ComplexField kernel( s );
   double total = 0.0;
   for( std::size_t l = 0; l < s.height; ++l ) {
      for( std::size_t k = 0; k < s.width; ++k ) {
         double const dk = static_cast< double >( std::min( k, s.width - k ));
         double const dl = static_cast< double >( std::min( l, s.height - l ));
         kernel( k, l ) = std::exp( -( dk * dk + dl * dl ) / ( 2 * sigma * sigma ));
         total += kernel( k, l ).real();
      }
   }
   for( auto& v : kernel ) v /= total;
   ComplexField const g = DirectDft( kernel, -1 );
   RealField out( s );
   for( std::size_t l = 0; l < s.height; ++l ) {
      for( std::size_t k = 0; k < s.width; ++k ) {
         double const sx = std::sin( std::numbers::pi * static_cast< double >( k ) / static_cast< double >( s.width ));
         double const sy = std::sin( std::numbers::pi * static_cast< double >( l ) / static_cast< double >( s.height ));
         out( k, l ) = alpha * 4.0 * ( sx * sx + sy * sy ) + beta * std::norm( g( k, l ));
      }
   }
   return out;
}

inline long Signed( std::size_t k, std::size_t n ) {
   long const i = static_cast< long >( k );
   long const nn = static_cast< long >( n );
   return i < ( nn + 1 ) / 2 ? i : i - nn;
}

// Pupil evaluated from the analytic disc at any integer frequency index,
// including points beyond the sampled grid.
inline double AnalyticPupil( OpticalConfig const& cfg, long i, long j ) {
   double const fx = static_cast< double >( i ) / ( static_cast< double >( cfg.shape.width ) * cfg.pixel_um() );
   double const fy = static_cast< double >( j ) / ( static_cast< double >( cfg.shape.height ) * cfg.pixel_um() );
   return std::hypot( fx, fy ) <= cfg.cutoff() ? 1.0 : 0.0;
}

// cross(u) = sum_u' S(u') P(u') P(u' + u), by brute force.
inline RealField DirectCorrelation( OpticalConfig const& cfg, RealField const& source ) {
   Shape const s = cfg.shape;
   RealField out( s );
   for( std::size_t v = 0; v < s.height; ++v ) {
      for( std::size_t u = 0; u < s.width; ++u ) {
         double acc = 0.0;
         for( std::size_t l = 0; l < s.height; ++l ) {
            for( std::size_t k = 0; k < s.width; ++k ) {
               long const i = Signed( k, s.width );
               long const j = Signed( l, s.height );
               acc += source( k, l ) * AnalyticPupil( cfg, i, j ) *
                      AnalyticPupil( cfg, i + Signed( u, s.width ), j + Signed( v, s.height ));
            }
         }
         out( u, v ) = acc;
      }
   }
   return out;
}

// Full transfer function from the direct correlation.
inline ComplexField DirectPtf( OpticalConfig const& cfg, SourcePair const& pair ) {
   RealField const cp = DirectCorrelation( cfg, pair.positive );
   RealField const cn = DirectCorrelation( cfg, pair.negative );
   double bp = 0.0;
   double bn = 0.0;
   RealField const pupil = MakePupil( cfg );
   for( std::size_t i = 0; i < pupil.size(); ++i ) {
      bp += pair.positive[ i ] * pupil[ i ];
      bn += pair.negative[ i ] * pupil[ i ];
   }
   Shape const s = cfg.shape;
   ComplexField h( s );
   for( std::size_t l = 0; l < s.height; ++l ) {
      for( std::size_t k = 0; k < s.width; ++k ) {
         std::size_t const nk = ( s.width - k ) % s.width;
         std::size_t const nl = ( s.height - l ) % s.height;
         // W_S(u) = i [cross(u) - conj(cross(-u))]
         std::complex< double > const wp = std::complex< double >( 0, 1 ) * ( cp( k, l ) - cp( nk, nl ));
         std::complex< double > const wn = std::complex< double >( 0, 1 ) * ( cn( k, l ) - cn( nk, nl ));
         h( k, l ) = ( wp - wn ) / ( bp + bn );
      }
   }
   return h;
}

} // namespace qdpc::test
