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
#include "qdpc/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdpc/operators.hpp"
#include "qdpc/random.hpp"

namespace qdpc {

namespace {

double Uniform( Rng& rng, double lo, double hi ) {
   return std::uniform_real_distribution< double >( lo, hi )( rng );
}

// Distance from p to the segment a-b.
double SegmentDistance( double px, double py, double ax, double ay, double bx, double by ) {
   double const dx = bx - ax;
   double const dy = by - ay;
   double const len2 = dx * dx + dy * dy;
   double t = len2 > 0 ? (( px - ax ) * dx + ( py - ay ) * dy ) / len2 : 0.0;
   t = std::clamp( t, 0.0, 1.0 );
   double const ex = px - ( ax + t * dx );
   double const ey = py - ( ay + t * dy );
   return std::sqrt( ex * ex + ey * ey );
}

void NormalizeUnit( RealField& f ) {
   double const lo = Min( f );
   double const hi = Max( f );
   ThrowIf( !( hi > lo ), ErrorCode::InvalidArgument, "phantom is constant" );
   for( double& v : f ) {
      v = ( v - lo ) / ( hi - lo );
   }
}

// Periodic Gaussian blur with std sigma pixels.
RealField Blur( RealField const& f, double sigma ) {
   Shape const shape = f.shape();
   ComplexField spec = Fft2( f );
   double const a = 2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma;
   for( std::size_t l = 0; l < shape.height; ++l ) {
      double fy = static_cast< double >( l ) / static_cast< double >( shape.height );
      if( fy > 0.5 ) fy -= 1.0;
      for( std::size_t k = 0; k < shape.width; ++k ) {
         double fx = static_cast< double >( k ) / static_cast< double >( shape.width );
         if( fx > 0.5 ) fx -= 1.0;
         spec( k, l ) *= std::exp( -a * ( fx * fx + fy * fy ));
      }
   }
   return Ifft2( spec );
}

} // namespace

RealField MakeShapesPhantom( Shape const& shape, std::uint64_t seed ) {
   ValidateShape( shape );
   Rng rng( DeriveSeed( { seed, HashName( "shapes-phantom" ) } ));
   double const w = static_cast< double >( shape.width );
   double const h = static_cast< double >( shape.height );
   double const scale = std::min( w, h );
   RealField f( shape );

   auto paint = [ & ]( auto&& inside, double value ) {
      for( std::size_t l = 0; l < shape.height; ++l ) {
         for( std::size_t k = 0; k < shape.width; ++k ) {
            if( inside( static_cast< double >( k ) + 0.5, static_cast< double >( l ) + 0.5 )) {
               f( k, l ) = value;
            }
         }
      }
   };

   // Large background regions first, then progressively smaller features.
   paint( [ & ]( double x, double ) { return x > 0.55 * w; }, 0.25 );
   paint( [ & ]( double, double y ) { return y > 0.7 * h; }, 0.15 );
   for( int i = 0; i < 6; ++i ) {
      double const cx = Uniform( rng, 0.1, 0.9 ) * w;
      double const cy = Uniform( rng, 0.1, 0.9 ) * h;
      double const r = Uniform( rng, 0.06, 0.18 ) * scale;
      double const value = Uniform( rng, 0.3, 1.0 );
      paint( [ = ]( double x, double y ) { return std::hypot( x - cx, y - cy ) < r; }, value );
   }
   for( int i = 0; i < 4; ++i ) {
      double const cx = Uniform( rng, 0.15, 0.85 ) * w;
      double const cy = Uniform( rng, 0.15, 0.85 ) * h;
      double const r_out = Uniform( rng, 0.06, 0.14 ) * scale;
      double const r_in = r_out * Uniform( rng, 0.4, 0.7 );
      double const value = Uniform( rng, 0.0, 0.8 );
      paint( [ = ]( double x, double y ) {
         double const d = std::hypot( x - cx, y - cy );
         return d < r_out && d > r_in;
      }, value );
   }
   for( int i = 0; i < 8; ++i ) {
      double const ax = Uniform( rng, 0.1, 0.9 ) * w;
      double const ay = Uniform( rng, 0.1, 0.9 ) * h;
      double const angle = Uniform( rng, 0.0, std::numbers::pi );
      double const len = Uniform( rng, 0.08, 0.25 ) * scale;
      double const bx = ax + len * std::cos( angle );
      double const by = ay + len * std::sin( angle );
      double const thick = Uniform( rng, 0.6, 1.6 );
      double const value = Uniform( rng, 0.0, 1.0 );
      paint( [ = ]( double x, double y ) { return SegmentDistance( x, y, ax, ay, bx, by ) < thick; }, value );
   }
   RealField out = Blur( f, 0.7 );
   NormalizeUnit( out );
   return out;
}

RealField MakeSmoothPhantom( Shape const& shape, std::uint64_t seed ) {
   ValidateShape( shape );
   Rng rng( DeriveSeed( { seed, HashName( "smooth-phantom" ) } ));
   double const w = static_cast< double >( shape.width );
   double const h = static_cast< double >( shape.height );
   RealField f( shape );
   for( int i = 0; i < 12; ++i ) {
      double const cx = Uniform( rng, 0.0, w );
      double const cy = Uniform( rng, 0.0, h );
      double const sigma = Uniform( rng, 2.5, 6.0 );
      double const amp = Uniform( rng, -1.0, 1.0 );
      for( std::size_t l = 0; l < shape.height; ++l ) {
         for( std::size_t k = 0; k < shape.width; ++k ) {
            // Minimum-image distance on the torus.
            double dx = std::fabs( static_cast< double >( k ) - cx );
            double dy = std::fabs( static_cast< double >( l ) - cy );
            dx = std::min( dx, w - dx );
            dy = std::min( dy, h - dy );
            f( k, l ) += amp * std::exp( -( dx * dx + dy * dy ) / ( 2.0 * sigma * sigma ));
         }
      }
   }
   double const mean = Mean( f );
   double peak = 0.0;
   for( double& v : f ) {
      v -= mean;
      peak = std::max( peak, std::fabs( v ));
   }
   for( double& v : f ) {
      v /= peak;
   }
   return f;
}

RealField Resample( RealField const& f, Shape const& shape ) {
   ValidateShape( shape );
   if( f.shape() == shape ) {
      return f;
   }
   RealField out( shape );
   double const sx = static_cast< double >( f.width() ) / static_cast< double >( shape.width );
   double const sy = static_cast< double >( f.height() ) / static_cast< double >( shape.height );
   auto clamp_index = []( double v, std::size_t n ) {
      return static_cast< std::size_t >( std::clamp( v, 0.0, static_cast< double >( n - 1 )));
   };
   for( std::size_t l = 0; l < shape.height; ++l ) {
      double const y = std::clamp(( static_cast< double >( l ) + 0.5 ) * sy - 0.5, 0.0,
                                  static_cast< double >( f.height() - 1 ));
      std::size_t const y0 = clamp_index( std::floor( y ), f.height() );
      std::size_t const y1 = std::min( y0 + 1, f.height() - 1 );
      double const ty = y - static_cast< double >( y0 );
      for( std::size_t k = 0; k < shape.width; ++k ) {
         double const x = std::clamp(( static_cast< double >( k ) + 0.5 ) * sx - 0.5, 0.0,
                                     static_cast< double >( f.width() - 1 ));
         std::size_t const x0 = clamp_index( std::floor( x ), f.width() );
         std::size_t const x1 = std::min( x0 + 1, f.width() - 1 );
         double const tx = x - static_cast< double >( x0 );
         double const top = f( x0, y0 ) * ( 1.0 - tx ) + f( x1, y0 ) * tx;
         double const bottom = f( x0, y1 ) * ( 1.0 - tx ) + f( x1, y1 ) * tx;
         out( k, l ) = top * ( 1.0 - ty ) + bottom * ty;
      }
   }
   return out;
}

} // namespace qdpc
