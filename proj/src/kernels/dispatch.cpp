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
#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qdpc::kernels {

#if !defined( QDPC_HAVE_AVX2 )
KernelTable const* detail::Avx2Table() { return nullptr; }
#endif
#if !defined( __aarch64__ )
KernelTable const* detail::NeonTable() { return nullptr; }
#endif

KernelTable const* Avx2() {
#if defined( QDPC_HAVE_AVX2 ) && ( defined( __GNUC__ ) || defined( __clang__ ))
   static bool const supported = __builtin_cpu_supports( "avx2" );
   return supported ? detail::Avx2Table() : nullptr;
#else
   return nullptr;
#endif
}

KernelTable const* Neon() {
   return detail::NeonTable();
}

namespace {

KernelTable const* ByName( std::string_view name ) {
   if( name == "scalar" ) {
      return &Scalar();
   }
   if( name == "avx2" ) {
      return Avx2();
   }
   if( name == "neon" ) {
      return Neon();
   }
   return nullptr;
}

KernelTable const* Detect() {
   if( char const* env = std::getenv( "QDPC_KERNELS" )) {
      if( auto const* table = ByName( env )) {
         return table;
      }
   }
   if( auto const* table = Avx2() ) {
      return table;
   }
   if( auto const* table = Neon() ) {
      return table;
   }
   return &Scalar();
}

std::atomic< KernelTable const* >& Slot() {
   static std::atomic< KernelTable const* > slot{ Detect() };
   return slot;
}

} // namespace

KernelTable const& Active() {
   return *Slot().load( std::memory_order_acquire );
}

bool SelectBackend( std::string_view name ) {
   auto const* table = ByName( name );
   if( !table ) {
      return false;
   }
   Slot().store( table, std::memory_order_release );
   return true;
}

} // namespace qdpc::kernels
