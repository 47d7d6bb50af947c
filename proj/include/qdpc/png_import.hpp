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
#include <filesystem>
#include <vector>

#include "qdpc/field.hpp"

namespace qdpc {

/// Reads an 8- or 16-bit grayscale PNG and maps [0, 2^bits - 1] linearly
/// onto [0, phase_max]. Colour, palette and alpha images throw UnsupportedImage.
RealField ImportPng( std::filesystem::path const& path, double phase_max );

/// Writes raw grayscale samples (bit_depth 8 or 16), row-major.
void WriteGrayPng( std::filesystem::path const& path, Shape const& shape, int bit_depth,
                   std::vector< std::uint16_t > const& samples );

} // namespace qdpc
