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
// qdpc command line: ptf, simulate, reconstruct, evaluate, bench, phantom.
// Failures print one line "error: <code>: <message>" to stderr and exit 1.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qdpc/bench.hpp"
#include "qdpc/config.hpp"
#include "qdpc/kernels.hpp"
#include "qdpc/metrics.hpp"
#include "qdpc/phantom.hpp"
#include "qdpc/png_import.hpp"
#include "qdpc/qpf.hpp"
#include "qdpc/stack_io.hpp"

namespace {

using namespace qdpc;
using nlohmann::json;

double ParseNumberOr( std::string const& text, char const* special, double special_value, char const* flag ) {
   if( text == special ) {
      return special_value;
   }
   std::size_t used = 0;
   double v = 0.0;
   try {
      v = std::stod( text, &used );
   } catch( std::exception const& ) {
      used = 0;
   }
   ThrowIf( used == 0 || used != text.size(), ErrorCode::InvalidArgument,
            std::string( flag ) + " expects a number or \"" + special + "\", got '" + text + "'" );
   return v;
}

std::optional< double > ParseAuto( std::string const& text, char const* flag ) {
   if( text == "auto" ) {
      return std::nullopt;
   }
   return ParseNumberOr( text, "auto", 0.0, flag );
}

OpticsSettings LoadOpticsOrDefault( std::string const& path ) {
   return path.empty() ? OpticsSettings{} : LoadOptics( path );
}

void WriteText( std::string const& path, std::string const& text ) {
   std::ofstream out( path, std::ios::binary );
   ThrowIf( !out, ErrorCode::IoFailure, "cannot open '" + path + "' for writing" );
   out << text;
   ThrowIf( !out, ErrorCode::IoFailure, "failed writing '" + path + "'" );
}

// ---- ptf ----

struct PtfArgs {
   std::string config;
   std::string pair = "lr";
   std::string out;
};

void RunPtf( PtfArgs const& a ) {
   OpticsSettings const settings = LoadOpticsOrDefault( a.config );
   PairAxis const axis = ParsePairAxis( a.pair );
   TransferFunctionSet const tfs = MakeTransferFunctions( settings.optics, settings.source, { axis } );
   ComplexField const& h = tfs.kernels.front();
   RealField imag( h.shape() );
   for( std::size_t i = 0; i < h.size(); ++i ) {
      imag[ i ] = h[ i ].imag();
   }
   json meta = {
         { "kind", "ptf" },
         { "component", "imag" },
         { "layout", "unshifted" },
         { "pair", ToString( axis ) },
         { "optics", ToJson( settings ) },
         { "peak", PeakMagnitude( h ) },
   };
   WriteQpf( PackFields( { imag }, meta ), a.out );
   std::printf( "wrote %s (%s pair, peak |H| = %.6g)\n", a.out.c_str(), ToString( axis ).c_str(), PeakMagnitude( h ));
}

// ---- simulate ----

struct SimulateArgs {
   std::string phase;
   std::string config;
   std::string snr = "inf";
   double background_a = 0.0;
   std::uint64_t seed = 0;
   double phase_max = 1.0;
   std::vector< std::string > pairs{ "lr", "tb" };
   std::string out;
};

void RunSimulate( SimulateArgs const& a ) {
   OpticsSettings const settings = LoadOpticsOrDefault( a.config );
   RealField phi = ReadPhase( a.phase, a.phase_max );
   json extra = json::object();
   if( phi.shape() != settings.optics.shape ) {
      extra[ "resampled_from" ] = { phi.width(), phi.height() };
      phi = Resample( phi, settings.optics.shape );
   }
   StackFile file;
   file.optics = settings;
   for( auto const& p : a.pairs ) file.pairs.push_back( ParsePairAxis( p ));
   DegradationSpec spec;
   spec.snr_db = ParseNumberOr( a.snr, "inf", std::numeric_limits< double >::infinity(), "--snr-db" );
   spec.strength_a = a.background_a;
   spec.seed = a.seed;
   Validate( spec );
   TransferFunctionSet const tfs = MakeTransferFunctions( settings.optics, settings.source, file.pairs );
   file.stack = Degrade( SimulateIdeal( phi, tfs ), spec );
   extra[ "phase_source" ] = a.phase;
   WriteStack( file, a.out, extra );
   std::printf( "wrote %s (%zu images, %zux%zu)\n", a.out.c_str(), file.stack.size(), phi.width(), phi.height() );
}

// ---- reconstruct ----

struct ReconstructArgs {
   std::string stack;
   std::string solver_config;
   std::string method;
   std::string alpha;
   std::string beta;
   std::optional< double > gamma;
   std::optional< int > max_iter;
   std::string tv_mode;
   std::string out;
};

void RunReconstruct( ReconstructArgs const& a ) {
   StackFile const file = ReadStack( a.stack );
   SolverConfig cfg;
   if( !a.solver_config.empty() ) {
      std::ifstream in( a.solver_config );
      ThrowIf( !in, ErrorCode::IoFailure, "cannot open '" + a.solver_config + "'" );
      try {
         cfg = SolverConfigFromJson( json::parse( in ));
      } catch( json::exception const& e ) {
         Throw( ErrorCode::InvalidConfig, "'" + a.solver_config + "' is not valid JSON: " + e.what() );
      }
   }
   if( !a.method.empty() ) cfg.method = ParseMethod( a.method );
   if( !a.alpha.empty() ) cfg.alpha = ParseAuto( a.alpha, "--alpha" );
   if( !a.beta.empty() ) cfg.beta = ParseAuto( a.beta, "--beta" );
   if( a.gamma ) cfg.gamma = *a.gamma;
   if( a.max_iter ) cfg.max_iterations = *a.max_iter;
   if( !a.tv_mode.empty() ) cfg.tv_mode = ParseTvMode( a.tv_mode );

   bool const adaptive = !cfg.alpha.has_value();
   double const raw_alpha = adaptive ? AdaptiveAlpha( file.stack ) : *cfg.alpha;
   ReconstructionResult const result = Reconstruct( file.stack, cfg );
   json meta = {
         { "kind", "phase" },
         { "solver", ToJson( result.config_echo ) },
         { "alpha_source", adaptive ? "adaptive" : "user" },
         { "iterations_run", result.iterations_run },
         { "residual_trace", result.residual_trace },
         { "stack", a.stack },
         { "kernels", kernels::Active().name },
   };
   bool const floored = adaptive && raw_alpha < kAlphaFloor;
   if( floored ) {
      meta[ "alpha_floored_from" ] = raw_alpha;
   }
   WriteQpf( PackFields( { result.phi }, meta ), a.out );
   std::printf( "wrote %s (method=%s alpha=%.6g%s iterations=%d final_change=%.3g)\n", a.out.c_str(),
                ToString( result.config_echo.method ).c_str(), *result.config_echo.alpha,
                floored ? " [floored]" : "", result.iterations_run,
                result.residual_trace.empty() ? 0.0 : result.residual_trace.back() );
}

// ---- evaluate ----

struct EvaluateArgs {
   std::string recon;
   std::string truth;
   double phase_max = 1.0;
};

void RunEvaluate( EvaluateArgs const& a ) {
   RealField const phi = ReadPhase( a.recon, a.phase_max );
   RealField const truth = ReadPhase( a.truth, a.phase_max );
   MetricReport const m = Rpsnr( phi, truth );
   std::string db = std::isinf( m.rpsnr_db ) ? "inf" : std::to_string( m.rpsnr_db );
   std::printf( "rpsnr_db=%s offset_c=%.9g\n", db.c_str(), m.offset_c );
}

// ---- bench ----

struct BenchArgs {
   std::string patterns;
   std::string config;
   std::string out;
   int trials = 10;
   std::size_t size = 128;
   std::uint64_t seed = 1;
   int jobs = 1;
   std::vector< double > snr{ 20.0, 40.0 };
   std::vector< double > strengths{ 0.0, 0.25, 0.5, 0.75 };
   std::vector< std::string > methods;
};

void RunBenchCommand( BenchArgs const& a ) {
   BenchConfig cfg;
   cfg.optics = LoadOpticsOrDefault( a.config );
   cfg.trials = a.trials;
   cfg.size = a.size;
   cfg.seed = a.seed;
   cfg.jobs = a.jobs;
   cfg.snr_levels = a.snr;
   cfg.strengths = a.strengths;
   if( !a.methods.empty() ) {
      cfg.methods.clear();
      for( auto const& m : a.methods ) cfg.methods.push_back( ParseMethod( m ));
   }
   auto const patterns = LoadPatterns( a.patterns, a.size );
   auto const records = RunBench( patterns, cfg );
   WriteText( a.out, FormatBenchCsv( records, cfg ));
   std::size_t aborted = 0;
   for( auto const& r : records ) aborted += std::isnan( r.rpsnr_db ) ? 1 : 0;
   std::printf( "wrote %s (%zu rows, %zu aborted)\n", a.out.c_str(), records.size(), aborted );
}

// ---- phantom ----

struct PhantomArgs {
   std::string kind = "shapes";
   std::size_t size = 128;
   std::uint64_t seed = 1;
   std::string out;
};

void RunPhantom( PhantomArgs const& a ) {
   Shape const shape{ a.size, a.size };
   RealField f;
   if( a.kind == "shapes" ) {
      f = MakeShapesPhantom( shape, a.seed );
   } else if( a.kind == "smooth" ) {
      f = MakeSmoothPhantom( shape, a.seed );
   } else {
      Throw( ErrorCode::InvalidArgument, "unknown phantom kind '" + a.kind + "' (expected shapes or smooth)" );
   }
   json meta = { { "kind", "phantom" }, { "phantom", a.kind }, { "seed", a.seed } };
   WriteQpf( PackFields( { f }, meta ), a.out );
   std::printf( "wrote %s (%s phantom, %zux%zu)\n", a.out.c_str(), a.kind.c_str(), a.size, a.size );
}

} // namespace

int main( int argc, char** argv ) {
   CLI::App app{ "qdpc: quantitative phase reconstruction from DPC image stacks" };
   app.require_subcommand( 1 );
   std::string kernels_backend;
   app.add_option( "--kernels", kernels_backend, "Force a kernel backend (scalar, avx2, neon)" );

   PtfArgs ptf;
   auto* ptf_cmd = app.add_subcommand( "ptf", "Export a phase transfer function" );
   ptf_cmd->add_option( "--config", ptf.config, "Optics JSON (defaults built in)" );
   ptf_cmd->add_option( "--pair", ptf.pair, "Source pair: lr or tb" )->check( CLI::IsMember( { "lr", "tb" } ));
   ptf_cmd->add_option( "--out", ptf.out, "Output QPF" )->required();

   SimulateArgs sim;
   auto* sim_cmd = app.add_subcommand( "simulate", "Simulate a degraded DPC stack from a phase map" );
   sim_cmd->add_option( "--phase", sim.phase, "Ground-truth phase (QPF or PNG)" )->required();
   sim_cmd->add_option( "--config", sim.config, "Optics JSON" );
   sim_cmd->add_option( "--snr-db", sim.snr, "Noise level in dB, or inf" );
   sim_cmd->add_option( "--background-a", sim.background_a, "Background strength A" );
   sim_cmd->add_option( "--seed", sim.seed, "Random seed" );
   sim_cmd->add_option( "--phase-max", sim.phase_max, "Phase assigned to full-scale PNG pixels (rad)" );
   sim_cmd->add_option( "--pairs", sim.pairs, "Source pairs to simulate" )->delimiter( ',' );
   sim_cmd->add_option( "--out", sim.out, "Output stack QPF" )->required();

   ReconstructArgs rec;
   auto* rec_cmd = app.add_subcommand( "reconstruct", "Reconstruct phase from a DPC stack" );
   rec_cmd->add_option( "--stack", rec.stack, "Input stack QPF" )->required();
   rec_cmd->add_option( "--solver-config", rec.solver_config, "Solver JSON; flags override it" );
   rec_cmd->add_option( "--method", rec.method, "tikhonov, tv, iso, l2retinex or l1retinex" );
   rec_cmd->add_option( "--alpha", rec.alpha, "Regularization weight or auto" );
   rec_cmd->add_option( "--beta", rec.beta, "Iso-DPC Gaussian weight or auto (2 alpha)" );
   rec_cmd->add_option( "--gamma", rec.gamma, "L1-Retinex fidelity weight" );
   rec_cmd->add_option( "--max-iter", rec.max_iter, "Iteration count" );
   rec_cmd->add_option( "--tv-mode", rec.tv_mode, "isotropic or anisotropic" );
   rec_cmd->add_option( "--out", rec.out, "Output phase QPF" )->required();

   EvaluateArgs ev;
   auto* ev_cmd = app.add_subcommand( "evaluate", "Score a reconstruction against ground truth" );
   ev_cmd->add_option( "--recon", ev.recon, "Reconstructed phase (QPF)" )->required();
   ev_cmd->add_option( "--truth", ev.truth, "Ground truth (QPF or PNG)" )->required();
   ev_cmd->add_option( "--phase-max", ev.phase_max, "Phase of full-scale PNG pixels (rad)" );

   BenchArgs bench;
   auto* bench_cmd = app.add_subcommand( "bench", "Run the robustness benchmark" );
   bench_cmd->add_option( "--patterns", bench.patterns, "Directory of QPF/PNG ground truths" )->required();
   bench_cmd->add_option( "--trials", bench.trials, "Trials per cell" );
   bench_cmd->add_option( "--size", bench.size, "Grid size (square)" );
   bench_cmd->add_option( "--seed", bench.seed, "Base seed" );
   bench_cmd->add_option( "--config", bench.config, "Optics JSON" );
   bench_cmd->add_option( "--jobs", bench.jobs, "Worker threads" );
   bench_cmd->add_option( "--snr-db", bench.snr, "SNR levels" )->delimiter( ',' );
   bench_cmd->add_option( "--strengths", bench.strengths, "Background strengths A" )->delimiter( ',' );
   bench_cmd->add_option( "--methods", bench.methods, "Methods to run" )->delimiter( ',' );
   bench_cmd->add_option( "--out", bench.out, "Output CSV" )->required();

   PhantomArgs ph;
   auto* ph_cmd = app.add_subcommand( "phantom", "Write a synthetic ground-truth phase map" );
   ph_cmd->add_option( "--kind", ph.kind, "shapes or smooth" );
   ph_cmd->add_option( "--size", ph.size, "Grid size (square)" );
   ph_cmd->add_option( "--seed", ph.seed, "Random seed" );
   ph_cmd->add_option( "--out", ph.out, "Output QPF" )->required();

   try {
      app.parse( argc, argv );
   } catch( CLI::CallForHelp const& e ) {
      return app.exit( e );
   } catch( CLI::CallForAllHelp const& e ) {
      return app.exit( e );
   } catch( CLI::ParseError const& e ) {
      std::fprintf( stderr, "error: usage: %s\n", e.what() );
      return 2;
   }

   try {
      if( !kernels_backend.empty() ) {
         ThrowIf( !kernels::SelectBackend( kernels_backend ), ErrorCode::InvalidArgument,
                  "kernel backend '" + kernels_backend + "' is not available on this machine" );
      }
      if( ptf_cmd->parsed() ) RunPtf( ptf );
      else if( sim_cmd->parsed() ) RunSimulate( sim );
      else if( rec_cmd->parsed() ) RunReconstruct( rec );
      else if( ev_cmd->parsed() ) RunEvaluate( ev );
      else if( bench_cmd->parsed() ) RunBenchCommand( bench );
      else if( ph_cmd->parsed() ) RunPhantom( ph );
   } catch( Error const& e ) {
      std::fprintf( stderr, "error: %s: %s\n", std::string( ErrorCodeName( e.code() )).c_str(), e.what() );
      return 1;
   } catch( std::exception const& e ) {
      std::fprintf( stderr, "error: internal: %s\n", e.what() );
      return 1;
   }
   return 0;
}
