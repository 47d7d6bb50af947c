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
#include "qdpc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <fftw3.h>

#include "qdpc/kernels.hpp"

namespace qdpc {

namespace {

struct FftwBuffer {
   explicit FftwBuffer( std::size_t n )
         : ptr( static_cast< fftw_complex* >( fftw_malloc( sizeof( fftw_complex ) * n ))) {
      ThrowIf( ptr == nullptr, ErrorCode::IoFailure, "fftw_malloc failed" );
   }
   ~FftwBuffer() { fftw_free( ptr ); }
   FftwBuffer( FftwBuffer const& ) = delete;
   FftwBuffer& operator=( FftwBuffer const& ) = delete;

   fftw_complex* ptr;
};

// Planning is not thread safe in FFTW; execution with new arrays is. Plans
// are created once per (shape, direction) and never destroyed.
fftw_plan PlanFor( Shape const& shape, int sign ) {
   static std::mutex mutex;
   static std::map< std::tuple< std::size_t, std::size_t, int >, fftw_plan > plans;
   std::lock_guard< std::mutex > lock( mutex );
   auto key = std::make_tuple( shape.width, shape.height, sign );
   auto it = plans.find( key );
   if( it != plans.end() ) {
      return it->second;
   }
   FftwBuffer in( shape.size() );
   FftwBuffer out( shape.size() );
   fftw_plan plan = fftw_plan_dft_2d( static_cast< int >( shape.height ), static_cast< int >( shape.width ),
                                      in.ptr, out.ptr, sign, FFTW_ESTIMATE );
   ThrowIf( plan == nullptr, ErrorCode::IoFailure, "FFTW could not plan " + ToString( shape ));
   plans.emplace( key, plan );
   return plan;
}

ComplexField Transform( ComplexField const& f, int sign ) {
   std::size_t const n = f.size();
   FftwBuffer in( n );
   FftwBuffer out( n );
   std::memcpy( in.ptr, f.data(), sizeof( fftw_complex ) * n );
   fftw_execute_dft( PlanFor( f.shape(), sign ), in.ptr, out.ptr );
   ComplexField result( f.shape() );
   std::memcpy( static_cast< void* >( result.data() ), out.ptr, sizeof( fftw_complex ) * n );
   return result;
}

} // namespace

ComplexField Fft2( RealField const& f ) {
   return Transform( ToComplex( f ), FFTW_FORWARD );
}

ComplexField Fft2( ComplexField const& f ) {
   return Transform( f, FFTW_FORWARD );
}

ComplexField Ifft2Complex( ComplexField const& spectrum ) {
   ComplexField out = Transform( spectrum, FFTW_BACKWARD );
   double const scale = 1.0 / static_cast< double >( spectrum.size() );
   for( auto& z : out ) {
      z *= scale;
   }
   return out;
}

RealField Ifft2( ComplexField const& spectrum ) {
   ComplexField const z = Ifft2Complex( spectrum );
   double max_real = 0.0;
   double max_imag = 0.0;
   for( auto const& v : z ) {
      max_real = std::max( max_real, std::fabs( v.real() ));
      max_imag = std::max( max_imag, std::fabs( v.imag() ));
   }
   double spectrum_l1 = 0.0;
   for( auto const& v : spectrum ) {
      spectrum_l1 += std::abs( v );
   }
   double const floor = 1e-13 * spectrum_l1 / static_cast< double >( spectrum.size() );
   if( max_imag > 1e-8 * max_real && max_imag > floor ) {
      Throw( ErrorCode::ImaginaryResidue,
             "inverse FFT imaginary residue " + std::to_string( max_imag ) + " exceeds 1e-8 of real magnitude " +
             std::to_string( max_real ));
   }
   RealField out( spectrum.shape() );
   for( std::size_t i = 0; i < z.size(); ++i ) {
      out[ i ] = z[ i ].real();
   }
   return out;
}

SpectralSymbols MakeSpectralSymbols( Shape const& shape ) {
   ValidateShape( shape );
   SpectralSymbols s{ ComplexField( shape ), ComplexField( shape ), RealField( shape ) };
   double const two_pi = 2.0 * std::numbers::pi;
   double const w = static_cast< double >( shape.width );
   double const h = static_cast< double >( shape.height );
   for( std::size_t l = 0; l < shape.height; ++l ) {
      double const ty = two_pi * static_cast< double >( l ) / h;
      double const sy = std::sin( std::numbers::pi * static_cast< double >( l ) / h );
      for( std::size_t k = 0; k < shape.width; ++k ) {
         double const tx = two_pi * static_cast< double >( k ) / w;
         double const sx = std::sin( std::numbers::pi * static_cast< double >( k ) / w );
         s.dx( k, l ) = Complex( std::cos( tx ) - 1.0, std::sin( tx ));
         s.dy( k, l ) = Complex( std::cos( ty ) - 1.0, std::sin( ty ));
         s.dsq( k, l ) = 4.0 * sx * sx + 4.0 * sy * sy;
      }
   }
   s.dx( 0, 0 ) = Complex( 0.0, 0.0 );
   s.dy( 0, 0 ) = Complex( 0.0, 0.0 );
   s.dsq( 0, 0 ) = 0.0;
   return s;
}

RealField Grad( RealField const& f, Axis axis ) {
   RealField out( f.shape() );
   auto const& k = kernels::Active();
   ( axis == Axis::X ? k.diff_x : k.diff_y )( f.data(), out.data(), f.width(), f.height() );
   return out;
}

RealField GradAdjoint( RealField const& g, Axis axis ) {
   RealField out( g.shape() );
   auto const& k = kernels::Active();
   ( axis == Axis::X ? k.diff_x_adjoint : k.diff_y_adjoint )( g.data(), out.data(), g.width(), g.height() );
   return out;
}

RealField ApplyTransfer( RealField const& f, RealField const& hspec ) {
   RequireSameShape( f.shape(), hspec.shape(), "apply_transfer" );
   ComplexField spectrum = Fft2( f );
   auto* z = reinterpret_cast< double* >( spectrum.data() );
   kernels::Active().scale_real( z, hspec.data(), z, spectrum.size() );
   return Ifft2( spectrum );
}

RealField ApplyTransfer( RealField const& f, ComplexField const& hspec ) {
   RequireSameShape( f.shape(), hspec.shape(), "apply_transfer" );
   ComplexField spectrum = Fft2( f );
   auto* z = reinterpret_cast< double* >( spectrum.data() );
   kernels::Active().cmul( reinterpret_cast< double const* >( hspec.data() ), z, z, spectrum.size() );
   return Ifft2( spectrum );
}

} // namespace qdpc
