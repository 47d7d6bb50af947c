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
#include "qdpc/png_import.hpp"

#include <csetjmp>
#include <cstdio>
#include <memory>

#include <png.h>

namespace qdpc {

namespace {

struct FileCloser {
   void operator()( std::FILE* f ) const { std::fclose( f ); }
};
using FilePtr = std::unique_ptr< std::FILE, FileCloser >;

FilePtr Open( std::filesystem::path const& path, char const* mode ) {
   FilePtr f( std::fopen( path.c_str(), mode ));
   ThrowIf( !f, ErrorCode::IoFailure, "cannot open '" + path.string() + "'" );
   return f;
}

char const* ColorTypeName( int color_type ) {
   switch( color_type ) {
      case PNG_COLOR_TYPE_PALETTE: return "paletted";
      case PNG_COLOR_TYPE_RGB: return "RGB";
      case PNG_COLOR_TYPE_RGB_ALPHA: return "RGBA";
      case PNG_COLOR_TYPE_GRAY_ALPHA: return "gray+alpha";
      default: return "unknown";
   }
}

struct PngHeader {
   int color_type = 0;
   int bit_depth = 0;
   png_uint_32 width = 0;
   png_uint_32 height = 0;
};

// Only writes through its pointer arguments, so nothing here is clobbered
// when libpng longjmps back on a decode error.
bool DecodeGray( png_structp png, png_infop info, std::FILE* file, PngHeader* header, std::vector< png_byte >* rows ) {
   if( setjmp( png_jmpbuf( png ))) {
      return false;
   }
   png_init_io( png, file );
   png_set_sig_bytes( png, 8 );
   png_read_info( png, info );
   header->width = png_get_image_width( png, info );
   header->height = png_get_image_height( png, info );
   header->color_type = png_get_color_type( png, info );
   header->bit_depth = png_get_bit_depth( png, info );
   if( header->color_type == PNG_COLOR_TYPE_GRAY && ( header->bit_depth == 8 || header->bit_depth == 16 )) {
      std::size_t const stride = png_get_rowbytes( png, info );
      rows->resize( stride * header->height );
      for( png_uint_32 y = 0; y < header->height; ++y ) {
         png_read_row( png, rows->data() + y * stride, nullptr );
      }
   }
   return true;
}

bool EncodeGray( png_structp png, png_infop info, std::FILE* file, Shape const* shape, int bit_depth,
                 std::vector< png_byte > const* buffer ) {
   if( setjmp( png_jmpbuf( png ))) {
      return false;
   }
   std::size_t const bytes_per = bit_depth == 8 ? 1 : 2;
   png_init_io( png, file );
   png_set_IHDR( png, info, static_cast< png_uint_32 >( shape->width ), static_cast< png_uint_32 >( shape->height ),
                 bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT );
   png_write_info( png, info );
   for( std::size_t y = 0; y < shape->height; ++y ) {
      png_write_row( png, buffer->data() + y * shape->width * bytes_per );
   }
   png_write_end( png, nullptr );
   return true;
}

} // namespace

RealField ImportPng( std::filesystem::path const& path, double phase_max ) {
   FilePtr file = Open( path, "rb" );
   png_byte signature[ 8 ];
   if( std::fread( signature, 1, 8, file.get() ) != 8 || png_sig_cmp( signature, 0, 8 ) != 0 ) {
      Throw( ErrorCode::UnsupportedImage, "'" + path.string() + "' is not a PNG file" );
   }
   png_structp png = png_create_read_struct( PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr );
   ThrowIf( !png, ErrorCode::IoFailure, "libpng initialisation failed" );
   png_infop info = png_create_info_struct( png );
   if( !info ) {
      png_destroy_read_struct( &png, nullptr, nullptr );
      Throw( ErrorCode::IoFailure, "libpng initialisation failed" );
   }

   PngHeader header;
   std::vector< png_byte > rows;
   bool const ok = DecodeGray( png, info, file.get(), &header, &rows );
   png_destroy_read_struct( &png, &info, nullptr );
   bool const failed = !ok;
   int const color_type = header.color_type;
   int const bit_depth = header.bit_depth;
   png_uint_32 const width = header.width;
   png_uint_32 const height = header.height;

   ThrowIf( failed, ErrorCode::UnsupportedImage, "'" + path.string() + "' could not be decoded" );
   if( color_type != PNG_COLOR_TYPE_GRAY ) {
      Throw( ErrorCode::UnsupportedImage, "'" + path.string() + "' is " + ColorTypeName( color_type ) +
                                          "; only grayscale PNG is accepted" );
   }
   ThrowIf( bit_depth != 8 && bit_depth != 16, ErrorCode::UnsupportedImage,
            "'" + path.string() + "' has bit depth " + std::to_string( bit_depth ) + "; expected 8 or 16" );

   RealField out( Shape{ width, height } );
   double const full = bit_depth == 8 ? 255.0 : 65535.0;
   std::size_t const n = out.size();
   for( std::size_t i = 0; i < n; ++i ) {
      unsigned v = bit_depth == 8 ? rows[ i ]
                                  : ( static_cast< unsigned >(rows[ 2 * i ] ) << 8 ) | rows[ 2 * i + 1 ];
      out[ i ] = v == 0 ? 0.0 : ( v == full ? phase_max : phase_max * ( v / full ));
   }
   return out;
}

void WriteGrayPng( std::filesystem::path const& path, Shape const& shape, int bit_depth,
                   std::vector< std::uint16_t > const& samples ) {
   ValidateShape( shape );
   ThrowIf( bit_depth != 8 && bit_depth != 16, ErrorCode::InvalidArgument, "bit depth must be 8 or 16" );
   ThrowIf( samples.size() != shape.size(), ErrorCode::ShapeMismatch, "sample count does not match shape" );
   std::size_t const bytes_per = bit_depth == 8 ? 1 : 2;
   std::vector< png_byte > buffer( shape.size() * bytes_per );
   for( std::size_t i = 0; i < samples.size(); ++i ) {
      if( bit_depth == 8 ) {
         ThrowIf( samples[ i ] > 255, ErrorCode::InvalidArgument, "8-bit sample out of range" );
         buffer[ i ] = static_cast< png_byte >( samples[ i ] );
      } else {
         buffer[ 2 * i ] = static_cast< png_byte >( samples[ i ] >> 8 );
         buffer[ 2 * i + 1 ] = static_cast< png_byte >( samples[ i ] & 0xFF );
      }
   }

   FilePtr file = Open( path, "wb" );
   png_structp png = png_create_write_struct( PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr );
   ThrowIf( !png, ErrorCode::IoFailure, "libpng initialisation failed" );
   png_infop info = png_create_info_struct( png );
   bool const failed = !info || !EncodeGray( png, info, file.get(), &shape, bit_depth, &buffer );
   png_destroy_write_struct( &png, &info );
   ThrowIf( failed, ErrorCode::IoFailure, "failed writing '" + path.string() + "'" );
}

} // namespace qdpc
