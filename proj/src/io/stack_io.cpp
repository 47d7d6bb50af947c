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
#include "qdpc/stack_io.hpp"

#include "qdpc/png_import.hpp"

namespace qdpc {

QpfContainer EncodeStack( StackFile const& file, nlohmann::json extra_meta ) {
   Validate( file.stack );
   nlohmann::json meta = std::move( extra_meta );
   meta[ "kind" ] = "dpc_stack";
   meta[ "optics" ] = ToJson( file.optics );
   nlohmann::json pairs = nlohmann::json::array();
   for( PairAxis axis : file.pairs ) pairs.push_back( ToString( axis ));
   meta[ "pairs" ] = pairs;
   meta[ "provenance" ] = file.stack.provenance == Provenance::Simulated ? "simulated" : "measured";
   if( file.stack.degradation ) {
      meta[ "degradation" ] = ToJson( *file.stack.degradation );
   }
   return PackFields( file.stack.images, std::move( meta ));
}

StackFile DecodeStack( QpfContainer const& container ) {
   auto const& meta = container.meta;
   ThrowIf( !meta.is_object() || meta.value( "kind", "" ) != "dpc_stack", ErrorCode::MalformedHeader,
            "QPF file is not a DPC stack (meta.kind != \"dpc_stack\")" );
   ThrowIf( !meta.contains( "optics" ) || !meta.contains( "pairs" ) || !meta[ "pairs" ].is_array(),
            ErrorCode::MalformedHeader, "DPC stack meta lacks optics or pairs" );
   StackFile file;
   file.optics = OpticsFromJson( meta[ "optics" ] );
   for( auto const& p : meta[ "pairs" ] ) {
      ThrowIf( !p.is_string(), ErrorCode::MalformedHeader, "pair names must be strings" );
      file.pairs.push_back( ParsePairAxis( p.get< std::string >() ));
   }
   ThrowIf( file.pairs.size() != container.frames, ErrorCode::HeaderPayloadMismatch,
            "stack has " + std::to_string( container.frames ) + " frames but " + std::to_string( file.pairs.size() ) +
            " source pairs" );
   RequireSameShape( container.shape, file.optics.optics.shape, "stack frames vs optics" );
   file.stack.images = UnpackFields( container );
   file.stack.tfs = MakeTransferFunctions( file.optics.optics, file.optics.source, file.pairs );
   file.stack.provenance = meta.value( "provenance", "measured" ) == "simulated" ? Provenance::Simulated
                                                                                : Provenance::Measured;
   if( meta.contains( "degradation" )) {
      file.stack.degradation = DegradationFromJson( meta[ "degradation" ] );
   }
   return file;
}

void WriteStack( StackFile const& file, std::filesystem::path const& path, nlohmann::json extra_meta ) {
   WriteQpf( EncodeStack( file, std::move( extra_meta )), path );
}

StackFile ReadStack( std::filesystem::path const& path ) {
   return DecodeStack( ReadQpf( path ));
}

RealField ReadPhase( std::filesystem::path const& path, double png_phase_max ) {
   if( path.extension() == ".png" ) {
      return ImportPng( path, png_phase_max );
   }
   QpfContainer const c = ReadQpf( path );
   ThrowIf( c.frames < 1, ErrorCode::HeaderPayloadMismatch, "'" + path.string() + "' holds no frames" );
   return UnpackFields( c ).front();
}

} // namespace qdpc
