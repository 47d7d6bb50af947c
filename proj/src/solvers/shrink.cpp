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
#include "qdpc/kernels.hpp"
#include "qdpc/solvers.hpp"

namespace qdpc {

RealField ShrinkAniso( RealField const& v, double t ) {
   ThrowIf( !( t >= 0.0 ), ErrorCode::InvalidArgument, "shrinkage threshold must be >= 0" );
   RealField out( v.shape() );
   kernels::Active().shrink_aniso( v.data(), t, out.data(), v.size() );
   return out;
}

std::pair< RealField, RealField > ShrinkIso( RealField const& vx, RealField const& vy, double t ) {
   ThrowIf( !( t >= 0.0 ), ErrorCode::InvalidArgument, "shrinkage threshold must be >= 0" );
   RequireSameShape( vx.shape(), vy.shape(), "shrink_iso" );
   auto const& k = kernels::Active();
   RealField magnitude_sq( vx.shape() );
   k.accumulate_squares( magnitude_sq.data(), vx.data(), vx.size() );
   k.accumulate_squares( magnitude_sq.data(), vy.data(), vy.size() );
   RealField ox( vx.shape() );
   RealField oy( vy.shape() );
   k.group_shrink_scale( magnitude_sq.data(), vx.data(), t, ox.data(), vx.size() );
   k.group_shrink_scale( magnitude_sq.data(), vy.data(), t, oy.data(), vy.size() );
   return { std::move( ox ), std::move( oy ) };
}

} // namespace qdpc
