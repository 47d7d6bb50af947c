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
// Half-quadratic splitting with alpha0 continuation, shared by TV-DPC and
// TV-L2-Retinex. One G/phi sweep per alpha0 level; alpha0 doubles until it
// reaches alpha0_max.

#include "common.hpp"

namespace qdpc {

using namespace solver_detail;

namespace {

enum class Fidelity { Intensity, Gradient };

ReconstructionResult RunHqs( DpcStack const& stack, SolverConfig const& cfg, Fidelity fidelity,
                             IterationObserver const& observer ) {
   Validate( cfg );
   auto const& k = kernels::Active();
   Shape const shape = stack.shape();
   std::size_t const n = shape.size();
   DataTerms const data = PrepareData( stack );
   SpectralSymbols const sym = MakeSpectralSymbols( shape );

   // Data part of the phi-update numerator and the alpha0-free denominator part.
   ComplexField data_numerator = data.correlation;
   if( fidelity == Fidelity::Gradient ) {
      k.scale_real( Raw( data.correlation ), sym.dsq.data(), Raw( data_numerator ), n );
   }

   double const alpha = *cfg.alpha;
   double alpha0 = cfg.alpha0_init.value_or( alpha );
   ReconstructionResult result;
   result.config_echo = cfg;
   result.phi = RealField( shape );
   RealField gx( shape );
   RealField gy( shape );
   ComplexField numerator( shape );
   RealField denominator( shape );
   ComplexField spectrum( shape );

   int iteration = 0;
   while( alpha0 < cfg.alpha0_max ) {
      ++iteration;
      std::tie( gx, gy ) = ShrinkGradient( Grad( result.phi, Axis::X ), Grad( result.phi, Axis::Y ),
                                           alpha / alpha0, cfg.tv_mode );
      ComplexField const coupling = DivergenceSpectrum( sym, Fft2( gx ), Fft2( gy ));
      for( std::size_t i = 0; i < n; ++i ) {
         numerator[ i ] = data_numerator[ i ] + alpha0 * coupling[ i ];
         denominator[ i ] = fidelity == Fidelity::Intensity
                            ? data.energy[ i ] + alpha0 * sym.dsq[ i ] + cfg.eta
                            : sym.dsq[ i ] * ( data.energy[ i ] + alpha0 ) + cfg.eta;
      }
      k.div_real( Raw( numerator ), denominator.data(), Raw( spectrum ), n );
      RealField next = Ifft2( spectrum );
      RequireFinite( next, iteration, "phase estimate" );
      result.residual_trace.push_back( RelativeChange( result.phi, next ));
      result.phi = std::move( next );
      if( observer ) {
         IterationView view;
         view.iteration = iteration;
         view.alpha0 = alpha0;
         view.phi = &result.phi;
         view.gx = &gx;
         view.gy = &gy;
         observer( view );
      }
      alpha0 *= 2.0;
   }
   result.iterations_run = iteration;
   return result;
}

} // namespace

ReconstructionResult SolveTvDpc( DpcStack const& stack, SolverConfig const& cfg, IterationObserver const& observer ) {
   return RunHqs( stack, cfg, Fidelity::Intensity, observer );
}

ReconstructionResult SolveL2Retinex( DpcStack const& stack, SolverConfig const& cfg,
                                     IterationObserver const& observer ) {
   return RunHqs( stack, cfg, Fidelity::Gradient, observer );
}

} // namespace qdpc
