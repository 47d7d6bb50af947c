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

// JSON schemas for optics, solver and degradation settings.
//
// optics.json:
//   {"wavelength_um":0.53, "na":0.3, "magnification":10, "camera_pixel_um":3.46,
//    "width":128, "height":128, "source":{"kind":"half_disc","inner_fraction":0.0}}
// Numeric fields that accept "auto" (alpha, beta, alpha0_init) or "inf"
// (snr_db) take the string in place of a number.

#include <filesystem>

#include <json.hpp>

#include "qdpc/forward.hpp"
#include "qdpc/optics.hpp"
#include "qdpc/solvers.hpp"

namespace qdpc {

struct OpticsSettings {
   OpticalConfig optics;
   SourceSpec source;
};

nlohmann::json ToJson( OpticsSettings const& settings );
OpticsSettings OpticsFromJson( nlohmann::json const& j );
OpticsSettings LoadOptics( std::filesystem::path const& path );

nlohmann::json ToJson( SolverConfig const& cfg );
SolverConfig SolverConfigFromJson( nlohmann::json const& j );

nlohmann::json ToJson( DegradationSpec const& spec );
DegradationSpec DegradationFromJson( nlohmann::json const& j );

} // namespace qdpc
