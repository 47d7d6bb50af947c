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
#include <cmath>

#include "qdpc/metrics.hpp"
#include "qdpc/solvers.hpp"

namespace qdpc {

std::string ToString( Method method ) {
   switch( method ) {
      case Method::Tikhonov: return "tikhonov";
      case Method::TvDpc: return "tv_dpc";
      case Method::IsoDpc: return "iso_dpc";
      case Method::L2Retinex: return "l2_retinex";
      case Method::L1Retinex: return "l1_retinex";
   }
   return "unknown";
}

Method ParseMethod( std::string const& name ) {
   if( name == "tikhonov" ) return Method::Tikhonov;
   if( name == "tv_dpc" || name == "tv" ) return Method::TvDpc;
   if( name == "iso_dpc" || name == "iso" ) return Method::IsoDpc;
   if( name == "l2_retinex" || name == "l2retinex" ) return Method::L2Retinex;
   if( name == "l1_retinex" || name == "l1retinex" ) return Method::L1Retinex;
   Throw( ErrorCode::InvalidArgument, "unknown method '" + name + "'" );
}

std::string ToString( TvMode mode ) {
   return mode == TvMode::Isotropic ? "isotropic" : "anisotropic";
}

TvMode ParseTvMode( std::string const& name ) {
   if( name == "isotropic" ) return TvMode::Isotropic;
   if( name == "anisotropic" ) return TvMode::Anisotropic;
   Throw( ErrorCode::InvalidArgument, "unknown tv mode '" + name + "'" );
}

namespace {

void RequirePositive( double v, char const* name ) {
   ThrowIf( !( v > 0.0 ) || !std::isfinite( v ), ErrorCode::InvalidConfig,
            std::string( name ) + " must be a positive finite number" );
}

void RequireNonNegative( double v, char const* name ) {
   ThrowIf( !( v >= 0.0 ) || !std::isfinite( v ), ErrorCode::InvalidConfig,
            std::string( name ) + " must be a non-negative finite number" );
}

} // namespace

void Validate( SolverConfig const& cfg ) {
   ThrowIf( !cfg.alpha, ErrorCode::InvalidConfig, "alpha is unresolved" );
   // Iso-DPC stays well posed through eta, so zero weights are allowed there.
   if( cfg.method == Method::IsoDpc ) {
      RequireNonNegative( *cfg.alpha, "alpha" );
      RequireNonNegative( cfg.beta.value_or( 0.0 ), "beta" );
      RequirePositive( cfg.iso_gauss_sigma, "iso_gauss_sigma" );
   } else {
      RequirePositive( *cfg.alpha, "alpha" );
   }
   RequirePositive( cfg.gamma, "gamma" );
   RequirePositive( cfg.gamma0, "gamma0" );
   RequirePositive( cfg.alpha0_max, "alpha0_max" );
   RequirePositive( cfg.bregman_alpha0, "bregman_alpha0" );
   RequirePositive( cfg.eta, "eta" );
   if( cfg.alpha0_init ) {
      RequirePositive( *cfg.alpha0_init, "alpha0_init" );
      ThrowIf( *cfg.alpha0_init > cfg.alpha0_max, ErrorCode::InvalidConfig, "alpha0_init exceeds alpha0_max" );
   }
   ThrowIf( cfg.max_iterations < 1, ErrorCode::InvalidConfig, "max_iterations must be positive" );
}

SolverConfig Resolve( SolverConfig cfg, DpcStack const& stack ) {
   if( !cfg.alpha ) {
      cfg.alpha = std::max( AdaptiveAlpha( stack ), kAlphaFloor );
   }
   if( !cfg.beta ) {
      cfg.beta = 2.0 * *cfg.alpha;
   }
   if( !cfg.alpha0_init ) {
      cfg.alpha0_init = *cfg.alpha;
   }
   Validate( cfg );
   return cfg;
}

ReconstructionResult Reconstruct( DpcStack const& stack, SolverConfig const& cfg ) {
   SolverConfig const resolved = Resolve( cfg, stack );
   switch( resolved.method ) {
      case Method::Tikhonov: return SolveTikhonov( stack, resolved );
      case Method::TvDpc: return SolveTvDpc( stack, resolved );
      case Method::IsoDpc: return SolveIsoDpc( stack, resolved );
      case Method::L2Retinex: return SolveL2Retinex( stack, resolved );
      case Method::L1Retinex: return SolveL1Retinex( stack, resolved );
   }
   Throw( ErrorCode::InvalidConfig, "unknown method" );
}

} // namespace qdpc
