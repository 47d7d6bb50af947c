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
#include "qdpc/field.hpp"

#include <algorithm>
#include <cmath>

#include "qdpc/kernels.hpp"

namespace qdpc {

std::string_view ErrorCodeName( ErrorCode code ) {
   switch( code ) {
      case ErrorCode::InvalidArgument: return "invalid_argument";
      case ErrorCode::ShapeMismatch: return "shape_mismatch";
      case ErrorCode::ImaginaryResidue: return "imaginary_residue";
      case ErrorCode::InvalidConfig: return "invalid_config";
      case ErrorCode::DegenerateSource: return "degenerate_source";
      case ErrorCode::SymmetryViolation: return "symmetry_violation";
      case ErrorCode::NonpositiveIntensity: return "nonpositive_intensity";
      case ErrorCode::DegenerateBackground: return "degenerate_background";
      case ErrorCode::NonFiniteState: return "non_finite_state";
      case ErrorCode::ZeroNormTruth: return "zero_norm_truth";
      case ErrorCode::MagicMismatch: return "magic_mismatch";
      case ErrorCode::TruncatedPayload: return "truncated_payload";
      case ErrorCode::HeaderPayloadMismatch: return "header_payload_mismatch";
      case ErrorCode::MalformedHeader: return "malformed_header";
      case ErrorCode::UnsupportedImage: return "unsupported_image";
      case ErrorCode::IoFailure: return "io_failure";
      case ErrorCode::EmptyPatternSet: return "empty_pattern_set";
   }
   return "unknown";
}

std::string ToString( Shape const& shape ) {
   return std::to_string( shape.width ) + "x" + std::to_string( shape.height );
}

void ValidateShape( Shape const& shape ) {
   ThrowIf( shape.width < 4 || shape.height < 4, ErrorCode::InvalidArgument,
            "shape " + ToString( shape ) + " is smaller than the 4x4 minimum" );
}

RealField operator+( RealField const& a, RealField const& b ) {
   RequireSameShape( a.shape(), b.shape(), "add" );
   RealField out( a.shape() );
   kernels::Active().add( a.data(), b.data(), out.data(), a.size() );
   return out;
}

RealField operator-( RealField const& a, RealField const& b ) {
   RequireSameShape( a.shape(), b.shape(), "subtract" );
   RealField out( a.shape() );
   kernels::Active().sub( a.data(), b.data(), out.data(), a.size() );
   return out;
}

RealField operator*( double s, RealField const& a ) {
   RealField out( a.shape() );
   std::transform( a.begin(), a.end(), out.begin(), [ s ]( double v ) { return s * v; } );
   return out;
}

RealField& operator+=( RealField& a, RealField const& b ) {
   RequireSameShape( a.shape(), b.shape(), "add" );
   kernels::Active().add( a.data(), b.data(), a.data(), a.size() );
   return a;
}

RealField& operator-=( RealField& a, RealField const& b ) {
   RequireSameShape( a.shape(), b.shape(), "subtract" );
   kernels::Active().sub( a.data(), b.data(), a.data(), a.size() );
   return a;
}

double Sum( RealField const& f ) {
   double s = 0.0;
   for( double v : f ) {
      s += v;
   }
   return s;
}

double Mean( RealField const& f ) {
   return Sum( f ) / static_cast< double >( f.size() );
}

double Min( RealField const& f ) {
   return *std::min_element( f.begin(), f.end() );
}

double Max( RealField const& f ) {
   return *std::max_element( f.begin(), f.end() );
}

double Dot( RealField const& a, RealField const& b ) {
   RequireSameShape( a.shape(), b.shape(), "dot" );
   return kernels::Active().dot( a.data(), b.data(), a.size() );
}

double Norm2( RealField const& f ) {
   return std::sqrt( kernels::Active().dot( f.data(), f.data(), f.size() ));
}

double MaxAbsDiff( RealField const& a, RealField const& b ) {
   RequireSameShape( a.shape(), b.shape(), "max abs diff" );
   double m = 0.0;
   for( std::size_t i = 0; i < a.size(); ++i ) {
      m = std::max( m, std::fabs( a[ i ] - b[ i ] ));
   }
   return m;
}

bool AllFinite( RealField const& f ) {
   return std::all_of( f.begin(), f.end(), []( double v ) { return std::isfinite( v ); } );
}

ComplexField ToComplex( RealField const& f ) {
   ComplexField out( f.shape() );
   for( std::size_t i = 0; i < f.size(); ++i ) {
      out[ i ] = Complex( f[ i ], 0.0 );
   }
   return out;
}

double MaxAbs( ComplexField const& f ) {
   double m = 0.0;
   for( auto const& z : f ) {
      m = std::max( m, std::abs( z ));
   }
   return m;
}

} // namespace qdpc
