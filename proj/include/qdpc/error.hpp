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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdpc {

enum class ErrorCode {
   InvalidArgument,
   ShapeMismatch,
   ImaginaryResidue,
   InvalidConfig,
   DegenerateSource,
   SymmetryViolation,
   NonpositiveIntensity,
   DegenerateBackground,
   NonFiniteState,
   ZeroNormTruth,
   MagicMismatch,
   TruncatedPayload,
   HeaderPayloadMismatch,
   MalformedHeader,
   UnsupportedImage,
   IoFailure,
   EmptyPatternSet,
};

/// Stable, machine-parseable name for an error code (e.g. "magic_mismatch").
std::string_view ErrorCodeName( ErrorCode code );

class Error : public std::runtime_error {
   public:
      Error( ErrorCode code, std::string const& what )
            : std::runtime_error( what ), code_( code ) {}

      ErrorCode code() const noexcept { return code_; }

   private:
      ErrorCode code_;
};

[[noreturn]] inline void Throw( ErrorCode code, std::string const& what ) {
   throw Error( code, what );
}

inline void ThrowIf( bool condition, ErrorCode code, std::string const& what ) {
   if( condition ) {
      throw Error( code, what );
   }
}

} // namespace qdpc
