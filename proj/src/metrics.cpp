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
#include "qdpc/metrics.hpp"

#include <cmath>
#include <numbers>

namespace qdpc {

MetricReport Rpsnr( RealField const& phi, RealField const& truth ) {
   RequireSameShape( phi.shape(), truth.shape(), "rpsnr" );
   double const signal = Dot( truth, truth );
   ThrowIf( !( signal > 0.0 ), ErrorCode::ZeroNormTruth, "ground-truth phase has zero norm" );
   RealField residual = truth - phi;
   double const c = Mean( residual );
   for( auto& v : residual ) {
      v -= c;
   }
   double const error = Dot( residual, residual );
   MetricReport report;
   report.offset_c = c;
   report.rpsnr_db = error > 0.0 ? 10.0 * std::log10( signal / error ) : std::numeric_limits< double >::infinity();
   return report;
}

double NoiseSensorScale() {
   return std::sqrt( std::numbers::pi / 2.0 ) / 20.0;
}

double LaplacianAbsSum( RealField const& f ) {
   static constexpr double kernel[ 3 ][ 3 ] = { { -1.0, 2.0, -1.0 }, { 2.0, -4.0, 2.0 }, { -1.0, 2.0, -1.0 } };
   std::size_t const w = f.width();
   std::size_t const h = f.height();
   double total = 0.0;
   for( std::size_t l = 0; l < h; ++l ) {
      for( std::size_t k = 0; k < w; ++k ) {
         double acc = 0.0;
         for( int dl = -1; dl <= 1; ++dl ) {
            std::size_t const ll = ( l + h + static_cast< std::size_t >( dl + 1 ) - 1 ) % h;
            for( int dk = -1; dk <= 1; ++dk ) {
               std::size_t const kk = ( k + w + static_cast< std::size_t >( dk + 1 ) - 1 ) % w;
               acc += kernel[ dl + 1 ][ dk + 1 ] * f( kk, ll );
            }
         }
         total += std::fabs( acc );
      }
   }
   return total;
}

double AdaptiveAlpha( DpcStack const& stack ) {
   ThrowIf( stack.images.empty(), ErrorCode::InvalidArgument, "adaptive alpha needs at least one image" );
   double sum = 0.0;
   for( auto const& image : stack.images ) {
      sum += LaplacianAbsSum( image );
   }
   Shape const shape = stack.images.front().shape();
   double const count = static_cast< double >( stack.images.size() ) * static_cast< double >( shape.size() );
   return NoiseSensorScale() * ( sum / count );
}

} // namespace qdpc
