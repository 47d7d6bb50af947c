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
#include "qdpc/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdpc/operators.hpp"
#include "qdpc/random.hpp"

namespace qdpc {

namespace {

constexpr int kBackgroundAttempts = 8;

double Rms( RealField const& f ) {
   return std::sqrt( Dot( f, f ) / static_cast< double >( f.size() ));
}

} // namespace

void Validate( DegradationSpec const& spec ) {
   ThrowIf( std::isnan( spec.snr_db ) || spec.snr_db == -std::numeric_limits< double >::infinity(),
            ErrorCode::InvalidConfig, "snr_db must be finite or +inf" );
   ThrowIf( !( spec.strength_a >= 0.0 ) || !std::isfinite( spec.strength_a ), ErrorCode::InvalidConfig,
            "background strength A must be finite and >= 0" );
   ThrowIf( !( spec.background_sigma_fraction > 0.0 ), ErrorCode::InvalidConfig,
            "background sigma fraction must be positive" );
}

void Validate( DpcStack const& stack ) {
   ThrowIf( stack.images.empty(), ErrorCode::InvalidArgument, "DPC stack has no images" );
   ThrowIf( stack.images.size() != stack.tfs.size(), ErrorCode::ShapeMismatch,
            "DPC stack has " + std::to_string( stack.images.size() ) + " images but " +
            std::to_string( stack.tfs.size() ) + " transfer functions" );
   for( std::size_t n = 0; n < stack.images.size(); ++n ) {
      RequireSameShape( stack.images[ n ].shape(), stack.tfs.kernels[ n ].shape(), "DPC stack" );
   }
}

RealField DpcFromIntensityPair( RealField const& right, RealField const& left ) {
   RequireSameShape( right.shape(), left.shape(), "dpc_from_intensity_pair" );
   RealField out( right.shape() );
   std::size_t bad = 0;
   for( std::size_t i = 0; i < out.size(); ++i ) {
      double const sum = right[ i ] + left[ i ];
      if( !( sum > 0.0 )) {
         ++bad;
         continue;
      }
      out[ i ] = ( right[ i ] - left[ i ] ) / sum;
   }
   ThrowIf( bad != 0, ErrorCode::NonpositiveIntensity,
            std::to_string( bad ) + " pixel(s) have a nonpositive intensity sum" );
   return out;
}

DpcStack SimulateIdeal( RealField const& phi, TransferFunctionSet const& tfs ) {
   ThrowIf( !AllFinite( phi ), ErrorCode::InvalidArgument, "phase map has non-finite values" );
   RequireSameShape( phi.shape(), tfs.shape(), "simulate_ideal" );
   DpcStack stack;
   stack.tfs = tfs;
   stack.provenance = Provenance::Simulated;
   ComplexField const spectrum = Fft2( phi );
   for( auto const& h : tfs.kernels ) {
      ComplexField product( spectrum.shape() );
      for( std::size_t i = 0; i < product.size(); ++i ) {
         product[ i ] = h[ i ] * spectrum[ i ];
      }
      stack.images.push_back( Ifft2( product ));
   }
   return stack;
}

RealField MakeBackground( Shape const& shape, std::uint64_t seed, double sigma_fraction ) {
   ValidateShape( shape );
   ThrowIf( !( sigma_fraction > 0.0 ), ErrorCode::InvalidArgument, "background sigma fraction must be positive" );
   double const sigma = sigma_fraction * static_cast< double >( std::min( shape.width, shape.height ));
   double const w = static_cast< double >( shape.width );
   double const h = static_cast< double >( shape.height );
   double const two_pi2_sigma2 = 2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma;

   for( int attempt = 0; attempt < kBackgroundAttempts; ++attempt ) {
      Rng rng( DeriveSeed( { seed, static_cast< std::uint64_t >( attempt ) } ));
      std::normal_distribution< double > normal( 0.0, 1.0 );
      RealField noise( shape );
      for( auto& v : noise ) {
         v = normal( rng );
      }
      ComplexField spectrum = Fft2( noise );
      for( std::size_t l = 0; l < shape.height; ++l ) {
         double const fy = static_cast< double >( l <= shape.height / 2 ? l : shape.height - l ) / h;
         for( std::size_t k = 0; k < shape.width; ++k ) {
            double const fx = static_cast< double >( k <= shape.width / 2 ? k : shape.width - k ) / w;
            spectrum( k, l ) *= std::exp( -two_pi2_sigma2 * ( fx * fx + fy * fy ));
         }
      }
      RealField field = Ifft2( spectrum );
      double const lo = Min( field );
      double const hi = Max( field );
      double const range = hi - lo;
      if( !( range > 1e-300 )) {
         continue;
      }
      for( auto& v : field ) {
         v = ( v - lo ) / range;
      }
      return field;
   }
   Throw( ErrorCode::DegenerateBackground,
          "background field stayed constant after " + std::to_string( kBackgroundAttempts ) + " attempts" );
}

double NoiseSigma( RealField const& ideal, double snr_db ) {
   if( snr_db == std::numeric_limits< double >::infinity() ) {
      return 0.0;
   }
   return Rms( ideal ) * std::pow( 10.0, -snr_db / 20.0 );
}

std::uint64_t NoiseSeed( std::uint64_t seed, std::size_t n ) {
   return DeriveSeed( { seed, 0x6E6F697365ull, static_cast< std::uint64_t >( n ) } );
}

std::uint64_t BackgroundSeed( std::uint64_t seed, std::size_t n ) {
   return DeriveSeed( { seed, 0x6267ull, static_cast< std::uint64_t >( n ) } );
}

DpcStack Degrade( DpcStack const& stack, DegradationSpec const& spec ) {
   Validate( spec );
   Validate( stack );
   ThrowIf( stack.provenance != Provenance::Simulated, ErrorCode::InvalidArgument,
            "only simulated stacks can be degraded" );
   DpcStack out = stack;
   out.degradation = spec;
   for( std::size_t n = 0; n < stack.images.size(); ++n ) {
      RealField const& ideal = stack.images[ n ];
      RealField& image = out.images[ n ];
      double const sigma = NoiseSigma( ideal, spec.snr_db );
      if( sigma > 0.0 ) {
         Rng rng( NoiseSeed( spec.seed, n ));
         std::normal_distribution< double > normal( 0.0, sigma );
         for( auto& v : image ) {
            v += normal( rng );
         }
      }
      if( spec.strength_a > 0.0 ) {
         double const amplitude = spec.strength_a * ( Max( ideal ) - Min( ideal ));
         RealField const background =
               MakeBackground( ideal.shape(), BackgroundSeed( spec.seed, n ), spec.background_sigma_fraction );
         for( std::size_t i = 0; i < image.size(); ++i ) {
            image[ i ] += amplitude * background[ i ];
         }
      }
   }
   return out;
}

} // namespace qdpc
