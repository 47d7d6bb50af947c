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

#include "qdpc/field.hpp"

namespace qdpc {

/// Piecewise-constant test pattern of discs, annuli and stroke segments,
/// slightly smoothed, mapped affinely to exactly [0, 1] rad.
RealField MakeShapesPhantom( Shape const& shape, std::uint64_t seed );

/// Sum of periodic Gaussian bumps with widths of a few pixels, zero mean,
/// peak magnitude 1.
RealField MakeSmoothPhantom( Shape const& shape, std::uint64_t seed );

/// Bilinear resampling onto a new grid, sampling pixel centres.
RealField Resample( RealField const& f, Shape const& shape );

} // namespace qdpc
