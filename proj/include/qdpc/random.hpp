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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qdpc {

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t MixSeed( std::uint64_t x ) {
   x += 0x9E3779B97F4A7C15ull;
   x = ( x ^ ( x >> 30 )) * 0xBF58476D1CE4E5B9ull;
   x = ( x ^ ( x >> 27 )) * 0x94D049BB133111EBull;
   return x ^ ( x >> 31 );
}

/// Order-sensitive combination of seed components.
constexpr std::uint64_t DeriveSeed( std::initializer_list< std::uint64_t > parts ) {
   std::uint64_t h = 0x6A09E667F3BCC909ull;
   for( std::uint64_t p : parts ) {
      h = MixSeed( h ^ MixSeed( p ));
   }
   return h;
}

/// FNV-1a, for folding names into seeds.
constexpr std::uint64_t HashName( std::string_view name ) {
   std::uint64_t h = 0xCBF29CE484222325ull;
   for( char c : name ) {
      h ^= static_cast< unsigned char >( c );
      h *= 0x100000001B3ull;
   }
   return h;
}

using Rng = std::mt19937_64;

} // namespace qdpc
