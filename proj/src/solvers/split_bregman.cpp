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
// TV-L1-Retinex by split Bregman iteration. State per image n and axis v:
// psi[n][v] approximates H_n grad_v phi - grad_v s_n, b[n][v] is its Bregman
// variable; G[v] approximates grad_v phi with Bregman variable g[v].

#include <array>

#include "common.hpp"

namespace qdpc {

using namespace solver_detail;

ReconstructionResult SolveL1Retinex( DpcStack const& stack, SolverConfig const& cfg,
                                     IterationObserver const& observer ) {
   Validate( cfg );
   auto const& k = kernels::Active();
   Shape const shape = stack.shape();
   std::size_t const n_px = shape.size();
   std::size_t const n_img = stack.size();
   DataTerms const data = PrepareData( stack );
   SpectralSymbols const sym = MakeSpectralSymbols( shape );
   std::array< Axis, 2 > const axes{ Axis::X, Axis::Y };

   double const alpha = *cfg.alpha;
   double const gamma0 = cfg.gamma0;
   double const alpha0 = cfg.bregman_alpha0;
   double const psi_threshold = cfg.gamma / gamma0;
   double const g_threshold = alpha / alpha0;

   // grad_v s_n, fixed for the whole run.
   std::vector< std::array< RealField, 2 >> data_grad( n_img );
   for( std::size_t m = 0; m < n_img; ++m ) {
      for( std::size_t v = 0; v < 2; ++v ) {
         data_grad[ m ][ v ] = Grad( stack.images[ m ], axes[ v ] );
      }
   }

   RealField denominator( shape );
   for( std::size_t i = 0; i < n_px; ++i ) {
      denominator[ i ] = sym.dsq[ i ] * ( gamma0 * data.energy[ i ] + alpha0 ) + cfg.eta;
   }

   std::vector< std::vector< RealField >> psi( n_img, std::vector< RealField >( 2, RealField( shape )));
   std::vector< std::vector< RealField >> b = psi;
   RealField gx( shape ), gy( shape );     // G
   RealField bgx( shape ), bgy( shape );   // g

   ReconstructionResult result;
   result.config_echo = cfg;
   result.phi = RealField( shape );

   RealField work( shape );
   RealField residual_sq( shape );
   ComplexField spectrum( shape );
   std::vector< std::array< RealField, 2 >> model_grad( n_img );   // H_n grad_v phi

   for( int iteration = 1; iteration <= cfg.max_iterations; ++iteration ) {
      // phi-update: closed-form quadratic solve.
      ComplexField numerator( shape );
      for( std::size_t m = 0; m < n_img; ++m ) {
         ComplexField per_image( shape );
         for( std::size_t v = 0; v < 2; ++v ) {
            k.add_sub( data_grad[ m ][ v ].data(), psi[ m ][ v ].data(), b[ m ][ v ].data(), work.data(), n_px );
            ComplexField const t = Fft2( work );
            k.conj_mul_acc( Raw( per_image ), Raw( sym.along( axes[ v ] )), Raw( t ), n_px );
         }
         k.conj_mul_acc( Raw( numerator ), Raw( stack.tfs.kernels[ m ] ), Raw( per_image ), n_px );
      }
      k.sub( gx.data(), bgx.data(), work.data(), n_px );
      ComplexField const cx = Fft2( work );
      k.sub( gy.data(), bgy.data(), work.data(), n_px );
      ComplexField const cy = Fft2( work );
      ComplexField const coupling = DivergenceSpectrum( sym, cx, cy );
      for( std::size_t i = 0; i < n_px; ++i ) {
         numerator[ i ] = gamma0 * numerator[ i ] + alpha0 * coupling[ i ];
      }
      k.div_real( Raw( numerator ), denominator.data(), Raw( spectrum ), n_px );
      RealField next = Ifft2( spectrum );
      RequireFinite( next, iteration, "phase estimate" );
      result.residual_trace.push_back( RelativeChange( result.phi, next ));
      result.phi = std::move( next );
      result.iterations_run = iteration;

      if( observer ) {
         IterationView view;
         view.iteration = iteration;
         view.alpha0 = alpha0;
         view.phi = &result.phi;
         view.gx = &gx;
         view.gy = &gy;
         view.psi = &psi;
         view.b = &b;
         view.bregman_gx = &bgx;
         view.bregman_gy = &bgy;
         observer( view );
      }

      // psi-update: r = (H grad phi - grad s) + b, shrunk jointly (isotropic)
      // or per component (anisotropic).
      std::fill( residual_sq.begin(), residual_sq.end(), 0.0 );
      std::vector< std::array< RealField, 2 >> r( n_img );
      for( std::size_t m = 0; m < n_img; ++m ) {
         for( std::size_t v = 0; v < 2; ++v ) {
            ComplexField z( shape );
            k.cmul( Raw( sym.along( axes[ v ] )), Raw( spectrum ), Raw( z ), n_px );
            k.cmul( Raw( stack.tfs.kernels[ m ] ), Raw( z ), Raw( z ), n_px );
            model_grad[ m ][ v ] = Ifft2( z );
            r[ m ][ v ] = RealField( shape );
            k.sub( model_grad[ m ][ v ].data(), data_grad[ m ][ v ].data(), work.data(), n_px );
            k.add( work.data(), b[ m ][ v ].data(), r[ m ][ v ].data(), n_px );
            k.accumulate_squares( residual_sq.data(), r[ m ][ v ].data(), n_px );
         }
      }
      for( std::size_t m = 0; m < n_img; ++m ) {
         for( std::size_t v = 0; v < 2; ++v ) {
            if( cfg.tv_mode == TvMode::Isotropic ) {
               k.group_shrink_scale( residual_sq.data(), r[ m ][ v ].data(), psi_threshold, psi[ m ][ v ].data(), n_px );
            } else {
               k.shrink_aniso( r[ m ][ v ].data(), psi_threshold, psi[ m ][ v ].data(), n_px );
            }
         }
      }

      // G-update on grad phi + g.
      RealField const ux = Grad( result.phi, Axis::X ) + bgx;
      RealField const uy = Grad( result.phi, Axis::Y ) + bgy;
      std::tie( gx, gy ) = ShrinkGradient( ux, uy, g_threshold, cfg.tv_mode );

      // Bregman updates: b += (H grad phi - grad s) - psi,  g += grad phi - G.
      for( std::size_t m = 0; m < n_img; ++m ) {
         for( std::size_t v = 0; v < 2; ++v ) {
            k.sub( r[ m ][ v ].data(), psi[ m ][ v ].data(), b[ m ][ v ].data(), n_px );
            RequireFinite( b[ m ][ v ], iteration, "Bregman variable b" );
         }
      }
      bgx = ux - gx;
      bgy = uy - gy;
      RequireFinite( bgx, iteration, "Bregman variable g" );
      RequireFinite( bgy, iteration, "Bregman variable g" );
   }
   return result;
}

} // namespace qdpc
