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

// DPC stacks and phase maps as QPF files. Stack meta carries everything
// needed to rebuild the transfer functions:
//   {"kind":"dpc_stack", "optics":{...}, "pairs":["lr","tb"],
//    "provenance":"simulated", "degradation":{...}}

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "qdpc/config.hpp"
#include "qdpc/forward.hpp"
#include "qdpc/qpf.hpp"

namespace qdpc {

struct StackFile {
   DpcStack stack;
   OpticsSettings optics;
   std::vector< PairAxis > pairs;
};

QpfContainer EncodeStack( StackFile const& file, nlohmann::json extra_meta = nlohmann::json::object() );
StackFile DecodeStack( QpfContainer const& container );

void WriteStack( StackFile const& file, std::filesystem::path const& path,
                 nlohmann::json extra_meta = nlohmann::json::object() );
StackFile ReadStack( std::filesystem::path const& path );

/// Reads a phase map: first frame of a QPF, or a grayscale PNG scaled to
/// [0, png_phase_max].
RealField ReadPhase( std::filesystem::path const& path, double png_phase_max = 1.0 );

} // namespace qdpc
