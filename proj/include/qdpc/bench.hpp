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

// Robustness benchmark: every pattern is simulated, degraded and reconstructed
// over a full factorial of SNR levels, background strengths, methods and trials.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdpc/config.hpp"
#include "qdpc/field.hpp"
#include "qdpc/solvers.hpp"

namespace qdpc {

struct BenchPattern {
   std::string name;
   RealField truth;
};

struct BenchConfig {
   std::vector< double > snr_levels{ 20.0, 40.0 };
   std::vector< double > strengths{ 0.0, 0.25, 0.5, 0.75 };
   std::vector< Method > methods{ Method::TvDpc, Method::IsoDpc, Method::L2Retinex, Method::L1Retinex };
   int trials = 10;
   std::size_t size = 128;
   std::uint64_t seed = 1;
   OpticsSettings optics;     // shape is overridden by size
   int jobs = 1;
};

struct BenchRecord {
   std::string pattern;
   double snr_db = 0.0;
   double strength_a = 0.0;
   std::string method;
   int trial = 0;
   double rpsnr_db = 0.0;    // NaN when the solver aborted
   double offset_c = 0.0;
   double runtime_ms = 0.0;
   std::uint64_t seed = 0;
   std::vector< double > residual_trace;   // not written to CSV
};

/// Fidelity weight used at a background strength: 0.1 up to 0.25, 0.01 at
/// 0.5, 0.002 at 0.75; other strengths take the nearest listed level.
double BenchGamma( double strength_a );

std::uint64_t TrialSeed( std::uint64_t base, std::string const& pattern, double snr_db, double strength_a, int trial );

/// Loads every .qpf (first frame) and .png (mapped to [0, 1] rad) file in a
/// directory, sorted by file name and resampled to size x size. Throws
/// EmptyPatternSet if none are found.
std::vector< BenchPattern > LoadPatterns( std::filesystem::path const& dir, std::size_t size );

/// Solver configuration used for one bench cell.
SolverConfig BenchSolverConfig( Method method, double strength_a );

/// Runs the suite. Records come back sorted by (pattern, snr, A, method
/// order in cfg.methods, trial) regardless of cfg.jobs.
std::vector< BenchRecord > RunBench( std::vector< BenchPattern > const& patterns, BenchConfig const& cfg );

nlohmann::json ToJson( BenchConfig const& cfg );

/// CSV with a "# qdpc bench config=<json>" comment line and a header row.
std::string FormatBenchCsv( std::vector< BenchRecord > const& records, BenchConfig const& cfg );

} // namespace qdpc
