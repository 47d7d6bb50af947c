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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdpc/error.hpp"

namespace qdpc {

/// Grid extent in pixels. Both sides must be at least 4 so the gradient and
/// Laplacian stencils fit without self-overlap.
struct Shape {
   std::size_t width = 0;
   std::size_t height = 0;

   constexpr std::size_t size() const noexcept { return width * height; }
   friend constexpr bool operator==( Shape const&, Shape const& ) = default;
};

std::string ToString( Shape const& shape );

/// Throws InvalidArgument unless width, height >= 4.
void ValidateShape( Shape const& shape );

/// Dense 2D row-major field. Element (k, l) is column k, row l, stored at
/// l * width + k. Spectra use the unshifted FFT layout (DC at (0, 0)).
template< typename T >
class Field {
   public:
      using value_type = T;

      Field() = default;

      explicit Field( Shape shape, T value = T{} ) : shape_( shape ) {
         ValidateShape( shape );
         data_.assign( shape.size(), value );
      }

      Field( Shape shape, std::vector< T > data ) : shape_( shape ), data_( std::move( data )) {
         ValidateShape( shape );
         ThrowIf( data_.size() != shape.size(), ErrorCode::ShapeMismatch,
                  "field data length does not match " + ToString( shape ));
      }

      Shape const& shape() const noexcept { return shape_; }
      std::size_t width() const noexcept { return shape_.width; }
      std::size_t height() const noexcept { return shape_.height; }
      std::size_t size() const noexcept { return data_.size(); }
      bool empty() const noexcept { return data_.empty(); }

      T& operator()( std::size_t k, std::size_t l ) { return data_[ l * shape_.width + k ]; }
      T const& operator()( std::size_t k, std::size_t l ) const { return data_[ l * shape_.width + k ]; }
      T& operator[]( std::size_t i ) { return data_[ i ]; }
      T const& operator[]( std::size_t i ) const { return data_[ i ]; }

      T* data() noexcept { return data_.data(); }
      T const* data() const noexcept { return data_.data(); }
      std::span< T > values() noexcept { return data_; }
      std::span< T const > values() const noexcept { return data_; }

      auto begin() noexcept { return data_.begin(); }
      auto end() noexcept { return data_.end(); }
      auto begin() const noexcept { return data_.begin(); }
      auto end() const noexcept { return data_.end(); }

      friend bool operator==( Field const&, Field const& ) = default;

   private:
      Shape shape_{};
      std::vector< T > data_;
};

using Complex = std::complex< double >;
using RealField = Field< double >;
using ComplexField = Field< Complex >;

inline void RequireSameShape( Shape const& a, Shape const& b, char const* context ) {
   if( !( a == b )) {
      Throw( ErrorCode::ShapeMismatch,
             std::string( context ) + ": shape " + ToString( a ) + " vs " + ToString( b ));
   }
}

// Elementwise helpers used throughout; all require equal shapes.
RealField operator+( RealField const& a, RealField const& b );
RealField operator-( RealField const& a, RealField const& b );
RealField operator*( double s, RealField const& a );
RealField& operator+=( RealField& a, RealField const& b );
RealField& operator-=( RealField& a, RealField const& b );

double Sum( RealField const& f );
double Mean( RealField const& f );
double Min( RealField const& f );
double Max( RealField const& f );
double Dot( RealField const& a, RealField const& b );
double Norm2( RealField const& f );
double MaxAbsDiff( RealField const& a, RealField const& b );
bool AllFinite( RealField const& f );

/// Complex field with zero imaginary part.
ComplexField ToComplex( RealField const& f );
/// Largest |z| over the field.
double MaxAbs( ComplexField const& f );

} // namespace qdpc
