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

// QPF1 container: the bytes "QPF1\n", one single-line JSON header
//   {"width":W,"height":H,"frames":F,"dtype":"f32le","meta":{...}}
// terminated by "\n", then F*W*H little-endian float32 values, row-major
// within a frame, frames back to back.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdpc/field.hpp"

namespace qdpc {

struct QpfContainer {
   Shape shape{};
   std::size_t frames = 0;
   std::vector< float > payload;   // frames * W * H
   nlohmann::json meta = nlohmann::json::object();

   friend bool operator==( QpfContainer const&, QpfContainer const& ) = default;
};

std::string EncodeQpf( QpfContainer const& container );
/// Throws MagicMismatch, MalformedHeader, TruncatedPayload (payload shorter
/// than the header implies) or HeaderPayloadMismatch (longer).
QpfContainer DecodeQpf( std::string const& bytes );

void WriteQpf( QpfContainer const& container, std::filesystem::path const& path );
QpfContainer ReadQpf( std::filesystem::path const& path );

QpfContainer PackFields( std::vector< RealField > const& fields, nlohmann::json meta = nlohmann::json::object() );
std::vector< RealField > UnpackFields( QpfContainer const& container );

} // namespace qdpc
