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
#include "qdpc/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace qdpc {

namespace {

using nlohmann::json;

template< typename T >
T Get( json const& j, char const* key, T fallback ) {
   auto it = j.find( key );
   if( it == j.end() ) {
      return fallback;
   }
   try {
      return it->get< T >();
   } catch( json::exception const& ) {
      Throw( ErrorCode::InvalidConfig, std::string( "config field '" ) + key + "' has the wrong type" );
   }
}

json OptionalNumber( std::optional< double > const& v ) {
   return v ? json( *v ) : json( "auto" );
}

std::optional< double > GetOptionalNumber( json const& j, char const* key, std::optional< double > fallback ) {
   auto it = j.find( key );
   if( it == j.end() ) {
      return fallback;
   }
   if( it->is_string() && *it == "auto" ) {
      return std::nullopt;
   }
   ThrowIf( !it->is_number(), ErrorCode::InvalidConfig, std::string( "config field '" ) + key +
                                                        "' must be a number or \"auto\"" );
   return it->get< double >();
}

std::string KindName( SourceKind kind ) {
   return kind == SourceKind::HalfDisc ? "half_disc" : "half_annulus";
}

SourceKind ParseKind( std::string const& name ) {
   if( name == "half_disc" ) return SourceKind::HalfDisc;
   if( name == "half_annulus" ) return SourceKind::HalfAnnulus;
   Throw( ErrorCode::InvalidConfig, "unknown source kind '" + name + "'" );
}

} // namespace

json ToJson( OpticsSettings const& s ) {
   return {
         { "wavelength_um", s.optics.wavelength_um },
         { "na", s.optics.na },
         { "magnification", s.optics.magnification },
         { "camera_pixel_um", s.optics.camera_pixel_um },
         { "width", s.optics.shape.width },
         { "height", s.optics.shape.height },
         { "source", { { "kind", KindName( s.source.kind ) }, { "inner_fraction", s.source.inner_radius_fraction } } },
   };
}

OpticsSettings OpticsFromJson( json const& j ) {
   ThrowIf( !j.is_object(), ErrorCode::InvalidConfig, "optics config must be a JSON object" );
   OpticsSettings s;
   s.optics.wavelength_um = Get( j, "wavelength_um", s.optics.wavelength_um );
   s.optics.na = Get( j, "na", s.optics.na );
   s.optics.magnification = Get( j, "magnification", s.optics.magnification );
   s.optics.camera_pixel_um = Get( j, "camera_pixel_um", s.optics.camera_pixel_um );
   s.optics.shape.width = Get< std::size_t >( j, "width", s.optics.shape.width );
   s.optics.shape.height = Get< std::size_t >( j, "height", s.optics.shape.height );
   if( auto it = j.find( "source" ); it != j.end() ) {
      s.source.kind = ParseKind( Get< std::string >( *it, "kind", "half_disc" ));
      s.source.inner_radius_fraction = Get( *it, "inner_fraction", 0.0 );
   }
   try {
      Validate( s.optics );
   } catch( Error const& e ) {
      Throw( ErrorCode::InvalidConfig, e.what() );
   }
   return s;
}

OpticsSettings LoadOptics( std::filesystem::path const& path ) {
   std::ifstream in( path );
   ThrowIf( !in, ErrorCode::IoFailure, "cannot open '" + path.string() + "'" );
   try {
      return OpticsFromJson( json::parse( in ));
   } catch( json::exception const& e ) {
      Throw( ErrorCode::InvalidConfig, "'" + path.string() + "' is not valid JSON: " + e.what() );
   }
}

json ToJson( SolverConfig const& cfg ) {
   return {
         { "method", ToString( cfg.method ) },
         { "alpha", OptionalNumber( cfg.alpha ) },
         { "beta", OptionalNumber( cfg.beta ) },
         { "gamma", cfg.gamma },
         { "gamma0", cfg.gamma0 },
         { "alpha0_init", OptionalNumber( cfg.alpha0_init ) },
         { "alpha0_max", cfg.alpha0_max },
         { "bregman_alpha0", cfg.bregman_alpha0 },
         { "max_iterations", cfg.max_iterations },
         { "eta", cfg.eta },
         { "tv_mode", ToString( cfg.tv_mode ) },
         { "iso_gauss_sigma", cfg.iso_gauss_sigma },
   };
}

SolverConfig SolverConfigFromJson( json const& j ) {
   ThrowIf( !j.is_object(), ErrorCode::InvalidConfig, "solver config must be a JSON object" );
   SolverConfig cfg;
   cfg.method = ParseMethod( Get< std::string >( j, "method", ToString( cfg.method )));
   cfg.alpha = GetOptionalNumber( j, "alpha", cfg.alpha );
   cfg.beta = GetOptionalNumber( j, "beta", cfg.beta );
   cfg.gamma = Get( j, "gamma", cfg.gamma );
   cfg.gamma0 = Get( j, "gamma0", cfg.gamma0 );
   cfg.alpha0_init = GetOptionalNumber( j, "alpha0_init", cfg.alpha0_init );
   cfg.alpha0_max = Get( j, "alpha0_max", cfg.alpha0_max );
   cfg.bregman_alpha0 = Get( j, "bregman_alpha0", cfg.bregman_alpha0 );
   cfg.max_iterations = Get( j, "max_iterations", cfg.max_iterations );
   cfg.eta = Get( j, "eta", cfg.eta );
   cfg.tv_mode = ParseTvMode( Get< std::string >( j, "tv_mode", ToString( cfg.tv_mode )));
   cfg.iso_gauss_sigma = Get( j, "iso_gauss_sigma", cfg.iso_gauss_sigma );
   return cfg;
}

json ToJson( DegradationSpec const& spec ) {
   return {
         { "snr_db", std::isinf( spec.snr_db ) ? json( "inf" ) : json( spec.snr_db ) },
         { "strength_a", spec.strength_a },
         { "seed", spec.seed },
         { "background_sigma_fraction", spec.background_sigma_fraction },
   };
}

DegradationSpec DegradationFromJson( json const& j ) {
   ThrowIf( !j.is_object(), ErrorCode::InvalidConfig, "degradation spec must be a JSON object" );
   DegradationSpec spec;
   if( auto it = j.find( "snr_db" ); it != j.end() ) {
      if( it->is_string() && *it == "inf" ) {
         spec.snr_db = std::numeric_limits< double >::infinity();
      } else {
         ThrowIf( !it->is_number(), ErrorCode::InvalidConfig, "snr_db must be a number or \"inf\"" );
         spec.snr_db = it->get< double >();
      }
   }
   spec.strength_a = Get( j, "strength_a", spec.strength_a );
   spec.seed = Get( j, "seed", spec.seed );
   spec.background_sigma_fraction = Get( j, "background_sigma_fraction", spec.background_sigma_fraction );
   Validate( spec );
   return spec;
}

} // namespace qdpc
