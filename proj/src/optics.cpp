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
#include "qdpc/optics.hpp"

#include <cmath>
#include <numbers>

#include "qdpc/operators.hpp"

namespace qdpc {

namespace {

// Signed frequency index of FFT bin k on an n-point axis, in [-n/2, n/2).
long SignedIndex( std::size_t k, std::size_t n ) {
   auto const half = static_cast< long >( n / 2 );
   auto const nn = static_cast< long >( n );
   return (( static_cast< long >( k ) + half ) % nn ) - half;
}

std::size_t NegatedIndex( std::size_t k, std::size_t n ) {
   return ( n - k ) % n;
}

// Relative tolerance for "on the dividing line"; absorbs cos(pi/2) != 0.
constexpr double kLineTolerance = 1e-12;

} // namespace

void Validate( OpticalConfig const& cfg ) {
   ValidateShape( cfg.shape );
   ThrowIf( !( cfg.wavelength_um > 0.0 ), ErrorCode::InvalidConfig, "wavelength must be positive" );
   ThrowIf( !( cfg.na > 0.0 && cfg.na < 1.5 ), ErrorCode::InvalidConfig, "NA must lie in (0, 1.5)" );
   ThrowIf( !( cfg.magnification > 0.0 ), ErrorCode::InvalidConfig, "magnification must be positive" );
   ThrowIf( !( cfg.camera_pixel_um > 0.0 ), ErrorCode::InvalidConfig, "camera pixel must be positive" );
   double const nyquist = 1.0 / ( 2.0 * cfg.pixel_um() );
   if( !( cfg.cutoff() < nyquist )) {
      Throw( ErrorCode::InvalidConfig, "pupil cutoff " + std::to_string( cfg.cutoff() ) +
                                       " cycles/um aliases past Nyquist " + std::to_string( nyquist ));
   }
}

FrequencyGrid MakeFrequencyGrid( OpticalConfig const& cfg ) {
   Validate( cfg );
   Shape const shape = cfg.shape;
   double const dx = cfg.pixel_um();
   double const span_x = static_cast< double >( shape.width ) * dx;
   double const span_y = static_cast< double >( shape.height ) * dx;
   FrequencyGrid grid{ RealField( shape ), RealField( shape ) };
   for( std::size_t l = 0; l < shape.height; ++l ) {
      double const fy = static_cast< double >( SignedIndex( l, shape.height )) / span_y;
      for( std::size_t k = 0; k < shape.width; ++k ) {
         grid.fx( k, l ) = static_cast< double >( SignedIndex( k, shape.width )) / span_x;
         grid.fy( k, l ) = fy;
      }
   }
   return grid;
}

RealField MakePupil( OpticalConfig const& cfg ) {
   FrequencyGrid const grid = MakeFrequencyGrid( cfg );
   double const cutoff = cfg.cutoff();
   RealField pupil( cfg.shape );
   for( std::size_t i = 0; i < pupil.size(); ++i ) {
      pupil[ i ] = std::hypot( grid.fx[ i ], grid.fy[ i ] ) <= cutoff ? 1.0 : 0.0;
   }
   return pupil;
}

RealField MakeSource( OpticalConfig const& cfg, SourceSpec const& spec ) {
   ThrowIf( spec.inner_radius_fraction < 0.0 || spec.inner_radius_fraction >= 1.0, ErrorCode::InvalidConfig,
            "inner radius fraction must lie in [0, 1)" );
   FrequencyGrid const grid = MakeFrequencyGrid( cfg );
   double const cutoff = cfg.cutoff();
   double const inner = spec.kind == SourceKind::HalfAnnulus ? spec.inner_radius_fraction * cutoff : 0.0;
   double const c = std::cos( spec.axis_angle );
   double const s = std::sin( spec.axis_angle );
   double const wanted = spec.side == SourceSide::Positive ? 1.0 : -1.0;
   RealField source( cfg.shape );
   std::size_t count = 0;
   for( std::size_t i = 0; i < source.size(); ++i ) {
      double const radius = std::hypot( grid.fx[ i ], grid.fy[ i ] );
      if( radius > cutoff || radius < inner ) {
         continue;
      }
      double const projection = c * grid.fx[ i ] + s * grid.fy[ i ];
      if( std::fabs( projection ) <= kLineTolerance * radius ) {
         continue;
      }
      if( projection * wanted > 0.0 ) {
         source[ i ] = 1.0;
         ++count;
      }
   }
   ThrowIf( count == 0, ErrorCode::DegenerateSource, "illumination source has no pixels" );
   return source;
}

SourcePair MakeSourcePair( OpticalConfig const& cfg, SourceSpec const& spec ) {
   SourceSpec positive = spec;
   positive.side = SourceSide::Positive;
   return { MakeSource( cfg, positive ), MakeSource( cfg, positive.mirrored() ) };
}

RealField SourcePupilCorrelation( RealField const& source, RealField const& pupil ) {
   RequireSameShape( source.shape(), pupil.shape(), "source/pupil correlation" );
   Shape const shape = source.shape();
   Shape const padded{ 2 * shape.width, 2 * shape.height };
   RealField a( padded );
   RealField p( padded );
   auto const to_padded = [ & ]( std::size_t k, std::size_t l ) {
      long const sk = SignedIndex( k, shape.width );
      long const sl = SignedIndex( l, shape.height );
      auto const pw = static_cast< long >( padded.width );
      auto const ph = static_cast< long >( padded.height );
      return std::pair< std::size_t, std::size_t >( static_cast< std::size_t >(( sk + pw ) % pw ),
                                                    static_cast< std::size_t >(( sl + ph ) % ph ));
   };
   for( std::size_t l = 0; l < shape.height; ++l ) {
      for( std::size_t k = 0; k < shape.width; ++k ) {
         auto const [ pk, pl ] = to_padded( k, l );
         a( pk, pl ) = source( k, l ) * pupil( k, l );
         p( pk, pl ) = pupil( k, l );
      }
   }
   // corr(u) = sum_u' a(u') p(u' + u)  <=>  ifft(conj(A) * P)
   ComplexField const fa = Fft2( a );
   ComplexField fp = Fft2( p );
   for( std::size_t i = 0; i < fp.size(); ++i ) {
      fp[ i ] = std::conj( fa[ i ] ) * fp[ i ];
   }
   RealField const corr = Ifft2( fp );
   RealField out( shape );
   for( std::size_t l = 0; l < shape.height; ++l ) {
      for( std::size_t k = 0; k < shape.width; ++k ) {
         auto const [ pk, pl ] = to_padded( k, l );
         out( k, l ) = corr( pk, pl );
      }
   }
   return out;
}

ComplexField ComputePtf( OpticalConfig const& cfg, SourcePair const& pair ) {
   RequireSameShape( pair.positive.shape(), cfg.shape, "compute_ptf" );
   RequireSameShape( pair.negative.shape(), cfg.shape, "compute_ptf" );
   RealField const pupil = MakePupil( cfg );
   RealField const cross_pos = SourcePupilCorrelation( pair.positive, pupil );
   RealField const cross_neg = SourcePupilCorrelation( pair.negative, pupil );

   double b_pos = 0.0;
   double b_neg = 0.0;
   for( std::size_t i = 0; i < pupil.size(); ++i ) {
      b_pos += pair.positive[ i ] * pupil[ i ] * pupil[ i ];
      b_neg += pair.negative[ i ] * pupil[ i ] * pupil[ i ];
   }
   double const total = b_pos + b_neg;
   ThrowIf( total == 0.0, ErrorCode::DegenerateSource, "source pair has zero transmitted intensity" );

   Shape const shape = cfg.shape;
   ComplexField h( shape );
   for( std::size_t l = 0; l < shape.height; ++l ) {
      std::size_t const nl = NegatedIndex( l, shape.height );
      for( std::size_t k = 0; k < shape.width; ++k ) {
         std::size_t const nk = NegatedIndex( k, shape.width );
         double const odd_pos = cross_pos( k, l ) - cross_pos( nk, nl );
         double const odd_neg = cross_neg( k, l ) - cross_neg( nk, nl );
         h( k, l ) = Complex( 0.0, ( odd_pos - odd_neg ) / total );
      }
   }
   CheckTransferInvariants( h );
   return h;
}

double PeakMagnitude( ComplexField const& h ) {
   return MaxAbs( h );
}

void CheckTransferInvariants( ComplexField const& h, double tolerance ) {
   Shape const shape = h.shape();
   double const peak = MaxAbs( h );
   double const bound = tolerance * peak;
   ThrowIf( h( 0, 0 ) != Complex( 0.0, 0.0 ), ErrorCode::SymmetryViolation, "transfer function is nonzero at DC" );
   for( std::size_t l = 0; l < shape.height; ++l ) {
      for( std::size_t k = 0; k < shape.width; ++k ) {
         Complex const z = h( k, l );
         Complex const zn = h( NegatedIndex( k, shape.width ), NegatedIndex( l, shape.height ));
         if( std::fabs( z.real() ) > bound ) {
            Throw( ErrorCode::SymmetryViolation, "transfer function has a real part; spatial kernel not odd-real" );
         }
         if( std::abs( zn - std::conj( z )) > bound ) {
            Throw( ErrorCode::SymmetryViolation, "transfer function is not Hermitian; spatial kernel not real" );
         }
         if( std::abs( zn + z ) > bound ) {
            Throw( ErrorCode::SymmetryViolation, "transfer function is not odd" );
         }
      }
   }
}

std::string ToString( PairAxis axis ) {
   return axis == PairAxis::LeftRight ? "lr" : "tb";
}

PairAxis ParsePairAxis( std::string const& name ) {
   if( name == "lr" ) {
      return PairAxis::LeftRight;
   }
   if( name == "tb" ) {
      return PairAxis::TopBottom;
   }
   Throw( ErrorCode::InvalidArgument, "unknown source pair '" + name + "' (expected lr or tb)" );
}

TransferFunctionSet MakeTransferFunctions( OpticalConfig const& cfg, SourceSpec const& source,
                                           std::vector< PairAxis > const& axes ) {
   Validate( cfg );
   TransferFunctionSet set;
   set.config = cfg;
   for( PairAxis axis : axes ) {
      SourceSpec spec = source;
      spec.side = SourceSide::Positive;
      spec.axis_angle = axis == PairAxis::LeftRight ? 0.0 : std::numbers::pi / 2.0;
      set.kernels.push_back( ComputePtf( cfg, MakeSourcePair( cfg, spec )));
      set.sources.push_back( spec );
   }
   return set;
}

TransferFunctionSet MakeDefaultTransferFunctions( OpticalConfig const& cfg ) {
   return MakeTransferFunctions( cfg, SourceSpec{}, { PairAxis::LeftRight, PairAxis::TopBottom } );
}

} // namespace qdpc
