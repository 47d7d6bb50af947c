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
#include <algorithm>

#include "common.hpp"

namespace qdpc {

using namespace solver_detail;

namespace {

ReconstructionResult FinishClosedForm( ComplexField const& numerator, RealField const& denominator,
                                       SolverConfig const& cfg ) {
   ComplexField spectrum( numerator.shape() );
   kernels::Active().div_real( Raw( numerator ), denominator.data(), Raw( spectrum ), spectrum.size() );
   ReconstructionResult result;
   result.phi = Ifft2( spectrum );
   RequireFinite( result.phi, 1, "phase estimate" );
   result.iterations_run = 1;
   // One solve from phi = 0.
   result.residual_trace.push_back( Norm2( result.phi ) / 1e-12 );
   result.config_echo = cfg;
   return result;
}

} // namespace

RealField GaussianPenaltySymbol( Shape const& shape, double sigma ) {
   ValidateShape( shape );
   ThrowIf( !( sigma > 0.0 ), ErrorCode::InvalidArgument, "Gaussian sigma must be positive" );
   RealField kernel( shape );
   double total = 0.0;
   for( std::size_t l = 0; l < shape.height; ++l ) {
      auto const dl = static_cast< double >( std::min( l, shape.height - l ));
      for( std::size_t k = 0; k < shape.width; ++k ) {
         auto const dk = static_cast< double >( std::min( k, shape.width - k ));
         double const v = std::exp( -( dk * dk + dl * dl ) / ( 2.0 * sigma * sigma ));
         kernel( k, l ) = v;
         total += v;
      }
   }
   for( auto& v : kernel ) {
      v /= total;
   }
   ComplexField const spectrum = Fft2( kernel );
   RealField symbol( shape );
   for( std::size_t i = 0; i < symbol.size(); ++i ) {
      symbol[ i ] = std::norm( spectrum[ i ] );
   }
   return symbol;
}

ReconstructionResult SolveTikhonov( DpcStack const& stack, SolverConfig const& cfg ) {
   Validate( cfg );
   DataTerms const data = PrepareData( stack );
   RealField denominator = data.energy;
   double const alpha = *cfg.alpha;
   for( auto& v : denominator ) {
      v += alpha;
   }
   return FinishClosedForm( data.correlation, denominator, cfg );
}

ReconstructionResult SolveIsoDpc( DpcStack const& stack, SolverConfig const& cfg ) {
   Validate( cfg );
   DataTerms const data = PrepareData( stack );
   Shape const shape = stack.shape();
   SpectralSymbols const sym = MakeSpectralSymbols( shape );
   RealField const gauss = GaussianPenaltySymbol( shape, cfg.iso_gauss_sigma );
   double const alpha = *cfg.alpha;
   double const beta = cfg.beta.value_or( 2.0 * alpha );
   RealField denominator( shape );
   for( std::size_t i = 0; i < denominator.size(); ++i ) {
      denominator[ i ] = data.energy[ i ] + alpha * sym.dsq[ i ] + beta * gauss[ i ] + cfg.eta;
   }
   return FinishClosedForm( data.correlation, denominator, cfg );
}

} // namespace qdpc
