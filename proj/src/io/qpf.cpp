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
#include "qdpc/qpf.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace qdpc {

namespace {

constexpr char kMagic[] = "QPF1";
constexpr std::size_t kMagicSize = 4;

void AppendFloat( std::string& out, float v ) {
   auto const bits = std::bit_cast< std::uint32_t >( v );
   for( int shift = 0; shift < 32; shift += 8 ) {
      out.push_back( static_cast< char >(( bits >> shift ) & 0xFFu ));
   }
}

float ReadFloat( unsigned char const* p ) {
   std::uint32_t bits = 0;
   for( int i = 3; i >= 0; --i ) {
      bits = ( bits << 8 ) | p[ i ];
   }
   return std::bit_cast< float >( bits );
}

std::size_t RequireCount( nlohmann::json const& header, char const* key ) {
   auto it = header.find( key );
   if( it == header.end() || !it->is_number_integer() || it->get< long long >() < 0 ) {
      Throw( ErrorCode::MalformedHeader, std::string( "QPF header field '" ) + key + "' missing or invalid" );
   }
   return static_cast< std::size_t >( it->get< long long >() );
}

} // namespace

std::string EncodeQpf( QpfContainer const& container ) {
   ValidateShape( container.shape );
   ThrowIf( container.payload.size() != container.frames * container.shape.size(), ErrorCode::HeaderPayloadMismatch,
            "payload holds " + std::to_string( container.payload.size() ) + " values, expected " +
            std::to_string( container.frames * container.shape.size()));
   nlohmann::json header = {
         { "width", container.shape.width },
         { "height", container.shape.height },
         { "frames", container.frames },
         { "dtype", "f32le" },
         { "meta", container.meta },
   };
   std::string out( kMagic, kMagicSize );
   out.push_back( '\n' );
   out += header.dump();
   out.push_back( '\n' );
   out.reserve( out.size() + 4 * container.payload.size() );
   for( float v : container.payload ) {
      AppendFloat( out, v );
   }
   return out;
}

QpfContainer DecodeQpf( std::string const& bytes ) {
   if( bytes.size() < kMagicSize || bytes.compare( 0, kMagicSize, kMagic ) != 0 ) {
      Throw( ErrorCode::MagicMismatch, "not a QPF1 file (bad magic)" );
   }
   ThrowIf( bytes.size() < kMagicSize + 1 || bytes[ kMagicSize ] != '\n', ErrorCode::MalformedHeader,
            "QPF magic must be followed by a newline" );
   std::size_t const header_begin = kMagicSize + 1;
   std::size_t const header_end = bytes.find( '\n', header_begin );
   ThrowIf( header_end == std::string::npos, ErrorCode::MalformedHeader, "QPF header line is not terminated" );

   nlohmann::json header;
   try {
      header = nlohmann::json::parse( bytes.begin() + static_cast< std::ptrdiff_t >( header_begin ),
                                      bytes.begin() + static_cast< std::ptrdiff_t >( header_end ));
   } catch( nlohmann::json::exception const& e ) {
      Throw( ErrorCode::MalformedHeader, std::string( "QPF header is not valid JSON: " ) + e.what() );
   }
   ThrowIf( !header.is_object(), ErrorCode::MalformedHeader, "QPF header must be a JSON object" );
   auto dtype = header.find( "dtype" );
   ThrowIf( dtype == header.end() || *dtype != "f32le", ErrorCode::MalformedHeader, "QPF dtype must be \"f32le\"" );

   QpfContainer container;
   container.shape = { RequireCount( header, "width" ), RequireCount( header, "height" ) };
   container.frames = RequireCount( header, "frames" );
   try {
      ValidateShape( container.shape );
   } catch( Error const& e ) {
      Throw( ErrorCode::MalformedHeader, e.what() );
   }
   if( auto meta = header.find( "meta" ); meta != header.end() ) {
      container.meta = *meta;
   }

   std::size_t const expected = 4 * container.frames * container.shape.size();
   std::size_t const actual = bytes.size() - header_end - 1;
   if( actual < expected ) {
      Throw( ErrorCode::TruncatedPayload, "QPF payload truncated: expected " + std::to_string( expected ) +
                                          " bytes, found " + std::to_string( actual ));
   }
   if( actual > expected ) {
      Throw( ErrorCode::HeaderPayloadMismatch, "QPF payload has " + std::to_string( actual ) +
                                               " bytes but the header implies " + std::to_string( expected ));
   }
   auto const* p = reinterpret_cast< unsigned char const* >( bytes.data() + header_end + 1 );
   container.payload.resize( container.frames * container.shape.size() );
   for( std::size_t i = 0; i < container.payload.size(); ++i ) {
      container.payload[ i ] = ReadFloat( p + 4 * i );
   }
   return container;
}

void WriteQpf( QpfContainer const& container, std::filesystem::path const& path ) {
   std::string const bytes = EncodeQpf( container );
   std::ofstream out( path, std::ios::binary );
   ThrowIf( !out, ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing" );
   out.write( bytes.data(), static_cast< std::streamsize >( bytes.size() ));
   ThrowIf( !out, ErrorCode::IoFailure, "failed writing '" + path.string() + "'" );
}

QpfContainer ReadQpf( std::filesystem::path const& path ) {
   std::ifstream in( path, std::ios::binary );
   ThrowIf( !in, ErrorCode::IoFailure, "cannot open '" + path.string() + "'" );
   std::string bytes( ( std::istreambuf_iterator< char >( in )), std::istreambuf_iterator< char >() );
   return DecodeQpf( bytes );
}

QpfContainer PackFields( std::vector< RealField > const& fields, nlohmann::json meta ) {
   ThrowIf( fields.empty(), ErrorCode::InvalidArgument, "cannot pack an empty field list" );
   QpfContainer container;
   container.shape = fields.front().shape();
   container.frames = fields.size();
   container.meta = std::move( meta );
   container.payload.reserve( container.frames * container.shape.size() );
   for( auto const& f : fields ) {
      RequireSameShape( f.shape(), container.shape, "QPF frames" );
      for( double v : f ) {
         container.payload.push_back( static_cast< float >( v ));
      }
   }
   return container;
}

std::vector< RealField > UnpackFields( QpfContainer const& container ) {
   std::vector< RealField > fields;
   std::size_t const n = container.shape.size();
   for( std::size_t f = 0; f < container.frames; ++f ) {
      RealField field( container.shape );
      for( std::size_t i = 0; i < n; ++i ) {
         field[ i ] = static_cast< double >( container.payload[ f * n + i ] );
      }
      fields.push_back( std::move( field ));
   }
   return fields;
}

} // namespace qdpc
