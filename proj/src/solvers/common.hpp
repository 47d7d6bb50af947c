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

#include <cmath>
#include <vector>

#include "qdpc/kernels.hpp"
#include "qdpc/operators.hpp"
#include "qdpc/solvers.hpp"

namespace qdpc::solver_detail {

inline double* Raw( ComplexField& f ) {
   return reinterpret_cast< double* >( f.data() );
}

inline double const* Raw( ComplexField const& f ) {
   return reinterpret_cast< double const* >( f.data() );
}

/// Fourier-domain data terms shared by every solver.
struct DataTerms {
   std::vector< ComplexField > spectra;   // fft2(s_n)
   ComplexField correlation;              // sum_n conj(H_n) fft2(s_n)
   RealField energy;                      // sum_n |H_n|^2
};

inline DataTerms PrepareData( DpcStack const& stack ) {
   Validate( stack );
   auto const& k = kernels::Active();
   Shape const shape = stack.shape();
   DataTerms terms{ {}, ComplexField( shape ), RealField( shape ) };
   for( std::size_t n = 0; n < stack.size(); ++n ) {
      terms.spectra.push_back( Fft2( stack.images[ n ] ));
      ComplexField const& h = stack.tfs.kernels[ n ];
      k.conj_mul_acc( Raw( terms.correlation ), Raw( h ), Raw( terms.spectra.back() ), shape.size() );
      k.abs2_acc( terms.energy.data(), Raw( h ), shape.size() );
   }
   return terms;
}

/// acc = conj(dx) * fx + conj(dy) * fy
inline ComplexField DivergenceSpectrum( SpectralSymbols const& sym, ComplexField const& fx, ComplexField const& fy ) {
   auto const& k = kernels::Active();
   ComplexField acc( fx.shape() );
   k.conj_mul_acc( Raw( acc ), Raw( sym.dx ), Raw( fx ), acc.size() );
   k.conj_mul_acc( Raw( acc ), Raw( sym.dy ), Raw( fy ), acc.size() );
   return acc;
}

inline double RelativeChange( RealField const& previous, RealField const& next ) {
   RealField const diff = next - previous;
   return Norm2( diff ) / std::max( Norm2( previous ), 1e-12 );
}

/// G-subproblem: shrink (ux, uy) with threshold t according to the TV mode.
inline std::pair< RealField, RealField > ShrinkGradient( RealField const& ux, RealField const& uy, double t,
                                                         TvMode mode ) {
   if( mode == TvMode::Isotropic ) {
      return ShrinkIso( ux, uy, t );
   }
   return { ShrinkAniso( ux, t ), ShrinkAniso( uy, t ) };
}

inline void RequireFinite( RealField const& f, int iteration, char const* what ) {
   if( !AllFinite( f )) {
      Throw( ErrorCode::NonFiniteState,
             std::string( what ) + " became non-finite at iteration " + std::to_string( iteration ));
   }
}

} // namespace qdpc::solver_detail
