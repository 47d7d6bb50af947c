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
#include "qdpc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "qdpc/forward.hpp"
#include "qdpc/metrics.hpp"
#include "qdpc/phantom.hpp"
#include "qdpc/png_import.hpp"
#include "qdpc/qpf.hpp"
#include "qdpc/random.hpp"

namespace qdpc {

namespace {

struct Cell {
   std::size_t pattern;
   std::size_t snr;
   std::size_t strength;
   int trial;
};

std::string FormatNumber( double v ) {
   if( std::isnan( v )) return "nan";
   if( std::isinf( v )) return v > 0 ? "inf" : "-inf";
   char buf[ 32 ];
   std::snprintf( buf, sizeof( buf ), "%.12g", v );
   return buf;
}

// RFC 4180 quoting for free-text fields.
std::string CsvField( std::string const& s ) {
   if( s.find_first_of( ",\"\n\r" ) == std::string::npos ) {
      return s;
   }
   std::string out = "\"";
   for( char c : s ) {
      if( c == '"' ) out += '"';
      out += c;
   }
   return out + "\"";
}

std::vector< BenchRecord > RunCell( BenchPattern const& pattern, TransferFunctionSet const& tfs,
                                    BenchConfig const& cfg, Cell const& cell ) {
   double const snr = cfg.snr_levels[ cell.snr ];
   double const a = cfg.strengths[ cell.strength ];
   std::uint64_t const seed = TrialSeed( cfg.seed, pattern.name, snr, a, cell.trial );
   DegradationSpec spec;
   spec.snr_db = snr;
   spec.strength_a = a;
   spec.seed = seed;
   DpcStack const stack = Degrade( SimulateIdeal( pattern.truth, tfs ), spec );

   std::vector< BenchRecord > records;
   for( Method method : cfg.methods ) {
      BenchRecord rec;
      rec.pattern = pattern.name;
      rec.snr_db = snr;
      rec.strength_a = a;
      rec.method = ToString( method );
      rec.trial = cell.trial;
      rec.seed = seed;
      auto const start = std::chrono::steady_clock::now();
      try {
         ReconstructionResult const result = Reconstruct( stack, BenchSolverConfig( method, a ));
         MetricReport const metric = Rpsnr( result.phi, pattern.truth );
         rec.rpsnr_db = metric.rpsnr_db;
         rec.offset_c = metric.offset_c;
         rec.residual_trace = result.residual_trace;
      } catch( Error const& ) {
         rec.rpsnr_db = std::numeric_limits< double >::quiet_NaN();
         rec.offset_c = std::numeric_limits< double >::quiet_NaN();
      }
      rec.runtime_ms = std::chrono::duration< double, std::milli >( std::chrono::steady_clock::now() - start ).count();
      records.push_back( std::move( rec ));
   }
   return records;
}

} // namespace

double BenchGamma( double strength_a ) {
   static constexpr double kLevels[] = { 0.0, 0.25, 0.5, 0.75 };
   static constexpr double kGamma[] = { 0.1, 0.1, 0.01, 0.002 };
   std::size_t best = 0;
   for( std::size_t i = 1; i < 4; ++i ) {
      if( std::fabs( strength_a - kLevels[ i ] ) < std::fabs( strength_a - kLevels[ best ] )) {
         best = i;
      }
   }
   return kGamma[ best ];
}

std::uint64_t TrialSeed( std::uint64_t base, std::string const& pattern, double snr_db, double strength_a, int trial ) {
   return DeriveSeed( { base, HashName( pattern ), std::bit_cast< std::uint64_t >( snr_db ),
                        std::bit_cast< std::uint64_t >( strength_a ), static_cast< std::uint64_t >( trial ) } );
}

SolverConfig BenchSolverConfig( Method method, double strength_a ) {
   SolverConfig cfg;
   cfg.method = method;
   cfg.gamma = BenchGamma( strength_a );
   return cfg;   // alpha adaptive, beta = 2 alpha
}

std::vector< BenchPattern > LoadPatterns( std::filesystem::path const& dir, std::size_t size ) {
   ThrowIf( !std::filesystem::is_directory( dir ), ErrorCode::IoFailure, "'" + dir.string() + "' is not a directory" );
   std::vector< std::filesystem::path > files;
   for( auto const& entry : std::filesystem::directory_iterator( dir )) {
      auto const ext = entry.path().extension();
      if( entry.is_regular_file() && ( ext == ".qpf" || ext == ".png" )) {
         files.push_back( entry.path() );
      }
   }
   ThrowIf( files.empty(), ErrorCode::EmptyPatternSet, "no .qpf or .png patterns in '" + dir.string() + "'" );
   std::sort( files.begin(), files.end() );
   std::vector< BenchPattern > patterns;
   Shape const shape{ size, size };
   for( auto const& path : files ) {
      RealField truth = path.extension() == ".png" ? ImportPng( path, 1.0 ) : UnpackFields( ReadQpf( path )).front();
      patterns.push_back( { path.stem().string(), Resample( truth, shape ) } );
   }
   return patterns;
}

std::vector< BenchRecord > RunBench( std::vector< BenchPattern > const& patterns, BenchConfig const& cfg ) {
   ThrowIf( patterns.empty(), ErrorCode::EmptyPatternSet, "bench needs at least one pattern" );
   ThrowIf( cfg.trials < 1, ErrorCode::InvalidConfig, "trials must be at least 1" );
   ThrowIf( cfg.methods.empty() || cfg.snr_levels.empty() || cfg.strengths.empty(), ErrorCode::InvalidConfig,
            "bench grid has an empty axis" );
   OpticalConfig optics = cfg.optics.optics;
   optics.shape = { cfg.size, cfg.size };
   Validate( optics );
   TransferFunctionSet const tfs = MakeDefaultTransferFunctions( optics );
   for( auto const& p : patterns ) {
      RequireSameShape( p.truth.shape(), optics.shape, "bench pattern" );
   }

   std::vector< Cell > cells;
   for( std::size_t p = 0; p < patterns.size(); ++p ) {
      for( std::size_t s = 0; s < cfg.snr_levels.size(); ++s ) {
         for( std::size_t a = 0; a < cfg.strengths.size(); ++a ) {
            for( int t = 0; t < cfg.trials; ++t ) {
               cells.push_back( { p, s, a, t } );
            }
         }
      }
   }

   std::vector< std::vector< BenchRecord >> results( cells.size() );
   std::atomic< std::size_t > next{ 0 };
   std::mutex error_mutex;
   std::exception_ptr error;
   auto worker = [ & ] {
      for( std::size_t i = next++; i < cells.size(); i = next++ ) {
         try {
            results[ i ] = RunCell( patterns[ cells[ i ].pattern ], tfs, cfg, cells[ i ] );
         } catch( ... ) {
            std::lock_guard< std::mutex > lock( error_mutex );
            if( !error ) error = std::current_exception();
         }
      }
   };
   std::size_t const jobs = static_cast< std::size_t >( std::max( 1, cfg.jobs ));
   if( jobs == 1 ) {
      worker();
   } else {
      std::vector< std::thread > pool;
      for( std::size_t j = 0; j < std::min( jobs, cells.size() ); ++j ) {
         pool.emplace_back( worker );
      }
      for( auto& t : pool ) t.join();
   }
   if( error ) std::rethrow_exception( error );

   // Cells are generated in (pattern, snr, A, trial) order; reorder so
   // methods come before trials.
   std::vector< BenchRecord > records;
   std::size_t const per_trial = cfg.methods.size();
   for( std::size_t c0 = 0; c0 < cells.size(); c0 += static_cast< std::size_t >( cfg.trials )) {
      for( std::size_t m = 0; m < per_trial; ++m ) {
         for( int t = 0; t < cfg.trials; ++t ) {
            records.push_back( results[ c0 + static_cast< std::size_t >( t ) ][ m ] );
         }
      }
   }
   return records;
}

nlohmann::json ToJson( BenchConfig const& cfg ) {
   nlohmann::json methods = nlohmann::json::array();
   for( Method m : cfg.methods ) methods.push_back( ToString( m ));
   nlohmann::json strengths = nlohmann::json::array();
   for( double a : cfg.strengths ) strengths.push_back( { { "a", a }, { "gamma", BenchGamma( a ) } } );
   OpticsSettings optics = cfg.optics;
   optics.optics.shape = { cfg.size, cfg.size };
   return {
         { "snr_db", cfg.snr_levels },
         { "strengths", strengths },
         { "methods", methods },
         { "trials", cfg.trials },
         { "size", cfg.size },
         { "seed", cfg.seed },
         { "alpha", "auto" },
         { "beta", "2*alpha" },
         { "optics", ToJson( optics ) },
   };
}

std::string FormatBenchCsv( std::vector< BenchRecord > const& records, BenchConfig const& cfg ) {
   std::string out = "# qdpc bench config=" + ToJson( cfg ).dump() + "\n";
   out += "pattern,snr_db,strength_a,method,trial,rpsnr_db,offset_c,runtime_ms,seed\n";
   for( auto const& r : records ) {
      out += CsvField( r.pattern ) + ',' + FormatNumber( r.snr_db ) + ',' + FormatNumber( r.strength_a ) + ',' +
             r.method + ',' + std::to_string( r.trial ) + ',' + FormatNumber( r.rpsnr_db ) + ',' +
             FormatNumber( r.offset_c ) + ',' + FormatNumber( r.runtime_ms ) + ',' + std::to_string( r.seed ) + '\n';
   }
   return out;
}

} // namespace qdpc
