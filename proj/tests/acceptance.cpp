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
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "qdpc/bench.hpp"
#include "qdpc/error.hpp"
#include "qdpc/metrics.hpp"
#include "qdpc/phantom.hpp"
#include "qdpc/qpf.hpp"
#include "qdpc/solvers.hpp"
#include "oracles.hpp"

using namespace qdpc;
using namespace qdpc::test;

namespace {

struct Outcome {
   bool pass = true;
   std::string detail;
};

std::string Fmt( char const* fmt, auto... args ) {
   char buf[ 256 ];
   std::snprintf( buf, sizeof buf, fmt, args... );
   return buf;
}

double Elapsed( std::chrono::steady_clock::time_point start ) {
   return std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
}

OpticalConfig Optics( std::size_t n ) {
   OpticalConfig cfg;   // 0.530 um, NA 0.3, x10, 3.46 um pixel
   cfg.shape = { n, n };
   return cfg;
}

DpcStack Degraded( RealField const& truth, double snr, double a, std::uint64_t seed ) {
   DegradationSpec spec;
   spec.snr_db = snr;
   spec.strength_a = a;
   spec.seed = seed;
   return Degrade( SimulateIdeal( truth, MakeDefaultTransferFunctions( Optics( truth.shape().width ))), spec );
}

Outcome OperatorSuite() {
   auto const start = std::chrono::steady_clock::now();
   Rng rng = MakeRng( 1001 );
   double adjoint = 0, roundtrip = 0, parseval = 0, symbol = 0;
   for( int trial = 0; trial < 100; ++trial ) {
      Shape const s = RandomShape( rng, 4, 64 );
      RealField const f = RandomField( s, rng );
      RealField const g = RandomField( s, rng );
      for( Axis axis : { Axis::X, Axis::Y } ) {
         double const lhs = Dot( Grad( f, axis ), g );
         double const rhs = Dot( f, GradAdjoint( g, axis ));
         adjoint = std::max( adjoint, std::fabs( lhs - rhs ) / ( Norm2( f ) * Norm2( g )));
      }
      ComplexField const spec = Fft2( f );
      roundtrip = std::max( roundtrip, SupNorm( Ifft2( spec ) - f ) / std::max( 1.0, SupNorm( f )));
      double energy = 0.0;
      for( auto const& v : spec ) energy += std::norm( v );
      double const direct = Dot( f, f );
      parseval = std::max( parseval, std::fabs( energy / static_cast< double >( s.size() ) - direct ) / direct );
      SpectralSymbols const sym = MakeSpectralSymbols( s );
      ComplexField const lap = Fft2( Lap( f ));
      double worst = 0.0;
      for( std::size_t i = 0; i < s.size(); ++i ) worst = std::max( worst, std::abs( lap[ i ] - sym.dsq[ i ] * spec[ i ] ));
      symbol = std::max( symbol, worst / std::max( 1.0, SupNorm( spec )));
   }
   double const secs = Elapsed( start );
   Outcome o;
   o.pass = adjoint <= 1e-10 && roundtrip <= 1e-12 && parseval <= 1e-10 && symbol <= 1e-9 && secs < 10.0;
   o.detail = Fmt( "adjoint %.1e, round trip %.1e, Parseval %.1e, Dsq %.1e, %.2f s", adjoint, roundtrip, parseval,
                   symbol, secs );
   return o;
}

Outcome PtfSuite() {
   auto const start = std::chrono::steady_clock::now();
   OpticalConfig const cfg = Optics( 128 );
   double realness = 0, odd = 0;
   bool dc = true, swap = true;
   for( double angle : { 0.0, std::numbers::pi / 2 } ) {
      SourceSpec spec;
      spec.axis_angle = angle;
      SourcePair const pair = MakeSourcePair( cfg, spec );
      ComplexField const h = ComputePtf( cfg, pair );
      ComplexField const swapped = ComputePtf( cfg, SourcePair{ pair.negative, pair.positive } );
      Shape const s = h.shape();
      dc = dc && h( 0, 0 ) == std::complex< double >( 0.0, 0.0 );
      for( std::size_t l = 0; l < s.height; ++l ) {
         for( std::size_t k = 0; k < s.width; ++k ) {
            auto const z = h( k, l );
            auto const zn = h(( s.width - k ) % s.width, ( s.height - l ) % s.height );
            realness = std::max( realness, std::fabs( z.real() ));
            odd = std::max( odd, std::abs( z + zn ));
            swap = swap && swapped( k, l ) == -z;
         }
      }
   }
   OpticalConfig const small = Optics( 16 );
   double corr = 0.0;
   for( double angle : { 0.0, std::numbers::pi / 2 } ) {
      SourceSpec spec;
      spec.axis_angle = angle;
      RealField const source = MakeSource( small, spec );
      RealField const fast = SourcePupilCorrelation( source, MakePupil( small ));
      RealField const direct = DirectCorrelation( small, source );
      corr = std::max( corr, SupNorm( fast - direct ) / SupNorm( direct ));
   }
   double const secs = Elapsed( start );
   Outcome o;
   o.pass = realness <= 1e-9 && odd <= 1e-9 && dc && swap && corr <= 1e-10 && secs < 30.0;
   o.detail = Fmt( "real part %.1e, oddness %.1e, H(0,0)=0 %s, swap negation %s, correlation %.1e, %.2f s", realness,
                   odd, dc ? "yes" : "no", swap ? "exact" : "inexact", corr, secs );
   return o;
}

Outcome SolverOracles() {
   OpticalConfig const cfg = Optics( 16 );
   DpcStack const stack = Degraded( MakeSmoothPhantom( cfg.shape, 5 ), 30.0, 0.0, 5 );

   SolverConfig tik;
   tik.method = Method::Tikhonov;
   tik.alpha = 0.05;
   RealField const t_oracle = SolveByDft( stack, RealField( cfg.shape ), *tik.alpha );
   double const tik_err = SupNorm( SolveTikhonov( stack, tik ).phi - t_oracle ) / std::max( 1.0, SupNorm( t_oracle ));

   SolverConfig iso;
   iso.method = Method::IsoDpc;
   iso.alpha = 0.03;
   iso.beta = 0.2;
   RealField const i_oracle =
         SolveByDft( stack, IsoPenaltyByDft( cfg.shape, *iso.alpha, *iso.beta, iso.iso_gauss_sigma ), iso.eta );
   double const iso_err = SupNorm( SolveIsoDpc( stack, iso ).phi - i_oracle ) / std::max( 1.0, SupNorm( i_oracle ));

   DpcStack const big = Degraded( MakeSmoothPhantom( Shape{ 32, 32 }, 6 ), 25.0, 0.5, 6 );
   double l2_worst = 0.0;
   int l2_calls = 0;
   SolverConfig l2;
   l2.method = Method::L2Retinex;
   l2.alpha = 0.01;
   l2.alpha0_init = 0.5;
   l2.alpha0_max = 0.5 * 1024.0;
   (void) SolveL2Retinex( big, l2, [ & ]( IterationView const& v ) {
      ++l2_calls;
      RealField lhs = l2.eta * *v.phi + v.alpha0 * Lap( *v.phi );
      RealField rhs = v.alpha0 * Div( *v.gx, *v.gy );
      for( std::size_t n = 0; n < big.size(); ++n ) {
         auto const& h = big.tfs.kernels[ n ];
         lhs += Lap( Ht( H( *v.phi, h ), h ));
         rhs += Lap( Ht( big.images[ n ], h ));
      }
      l2_worst = std::max( l2_worst, Norm2( lhs - rhs ) / Norm2( rhs ));
   } );

   double l1_worst = 0.0;
   int l1_calls = 0;
   SolverConfig l1;
   l1.method = Method::L1Retinex;
   l1.alpha = 0.01;
   l1.gamma = 0.05;
   l1.max_iterations = 10;
   (void) SolveL1Retinex( big, l1, [ & ]( IterationView const& v ) {
      ++l1_calls;
      double const g0 = l1.gamma0, a0 = l1.bregman_alpha0;
      RealField lhs = l1.eta * *v.phi + a0 * Lap( *v.phi );
      RealField rhs = a0 * Div( *v.gx - *v.bregman_gx, *v.gy - *v.bregman_gy );
      for( std::size_t n = 0; n < big.size(); ++n ) {
         auto const& h = big.tfs.kernels[ n ];
         lhs += g0 * Lap( Ht( H( *v.phi, h ), h ));
         for( std::size_t a = 0; a < 2; ++a ) {
            Axis const axis = a == 0 ? Axis::X : Axis::Y;
            RealField const target = Grad( big.images[ n ], axis ) + ( *v.psi )[ n ][ a ] - ( *v.b )[ n ][ a ];
            rhs += g0 * GradAdjoint( Ht( target, h ), axis );
         }
      }
      l1_worst = std::max( l1_worst, Norm2( lhs - rhs ) / Norm2( rhs ));
   } );

   Outcome o;
   o.pass = tik_err <= 1e-10 && iso_err <= 1e-10 && l2_calls == 10 && l1_calls == 10 && l2_worst <= 1e-8 &&
            l1_worst <= 1e-8;
   o.detail = Fmt( "tikhonov %.1e, iso %.1e, l2 residual %.1e over %d iterations, l1 residual %.1e over %d iterations",
                   tik_err, iso_err, l2_worst, l2_calls, l1_worst, l1_calls );
   return o;
}

Outcome DcInvariance() {
   RealField const truth = MakeShapesPhantom( Shape{ 128, 128 }, 4 );
   DpcStack const stack = Degraded( truth, 20.0, 0.25, 4 );
   DpcStack shifted = stack;
   double const offsets[ 2 ] = { 0.3, -0.7 };
   for( std::size_t n = 0; n < shifted.size(); ++n ) {
      for( double& v : shifted.images[ n ] ) v += offsets[ n ];
   }
   std::map< Method, double > change;
   for( Method m : { Method::L2Retinex, Method::L1Retinex, Method::TvDpc } ) {
      SolverConfig cfg = BenchSolverConfig( m, 0.25 );
      change[ m ] = SupNorm( Reconstruct( stack, cfg ).phi - Reconstruct( shifted, cfg ).phi );
   }
   Outcome o;
   o.pass = change[ Method::L2Retinex ] <= 1e-8 && change[ Method::L1Retinex ] <= 1e-8 &&
            change[ Method::TvDpc ] > 1e-3;
   o.detail = Fmt( "l2_retinex %.1e, l1_retinex %.1e, tv_dpc %.1e (needs > 1e-3)", change[ Method::L2Retinex ],
                   change[ Method::L1Retinex ], change[ Method::TvDpc ] );
   return o;
}

struct ProtocolRun {
   std::vector< BenchRecord > records;
   double seconds = 0.0;
};

ProtocolRun RunProtocol() {
   auto const start = std::chrono::steady_clock::now();
   BenchConfig cfg;
   cfg.snr_levels = { 20.0 };
   cfg.trials = 5;
   cfg.size = 128;
   cfg.jobs = 1;
   std::vector< BenchPattern > patterns{ { "shapes", MakeShapesPhantom( Shape{ 128, 128 }, 1 ) } };
   ProtocolRun run;
   run.records = RunBench( patterns, cfg );
   run.seconds = Elapsed( start );
   return run;
}

double MeanRpsnr( ProtocolRun const& run, std::string const& method, double a ) {
   double sum = 0.0;
   int count = 0;
   for( auto const& r : run.records ) {
      if( r.method == method && r.strength_a == a ) {
         sum += r.rpsnr_db;
         ++count;
      }
   }
   return sum / count;
}

Outcome TrendReproduction( ProtocolRun const& run ) {
   double const tv_drop = MeanRpsnr( run, "tv_dpc", 0.0 ) - MeanRpsnr( run, "tv_dpc", 0.75 );
   double lo = 1e300, hi = -1e300;
   std::string per_a;
   for( double a : { 0.0, 0.25, 0.5, 0.75 } ) {
      double const m = MeanRpsnr( run, "l1_retinex", a );
      lo = std::min( lo, m );
      hi = std::max( hi, m );
      per_a += Fmt( "%s%.2f", per_a.empty() ? "" : "/", m );
   }
   double const l1 = MeanRpsnr( run, "l1_retinex", 0.75 );
   double const l2 = MeanRpsnr( run, "l2_retinex", 0.75 );
   double const iso = MeanRpsnr( run, "iso_dpc", 0.75 );
   double const tv = MeanRpsnr( run, "tv_dpc", 0.75 );
   bool const a = tv_drop >= 25.0;
   bool const b = hi - lo <= 3.0;
   bool const c = l1 >= l2 && l2 > iso && iso > tv;
   Outcome o;
   o.pass = a && b && c && run.seconds < 300.0;
   o.detail = Fmt( "(a) %s tv drop %.2f dB; (b) %s l1 spread %.2f dB (%s); (c) %s at A=0.75 l1 %.2f l2 %.2f iso %.2f tv "
                   "%.2f; %.1f s",
                   a ? "pass" : "FAIL", tv_drop, b ? "pass" : "FAIL", hi - lo, per_a.c_str(), c ? "pass" : "FAIL", l1, l2, iso, tv,
                   run.seconds );
   return o;
}

Outcome Convergence( ProtocolRun const& run ) {
   int cells = 0, converged = 0;
   std::map< double, double > worst;   // per A, largest best-in-40 relative change
   for( auto const& r : run.records ) {
      if( r.method != "l1_retinex" ) continue;
      ++cells;
      double best = std::numeric_limits< double >::infinity();
      for( std::size_t i = 0; i < r.residual_trace.size() && i < 40; ++i ) best = std::min( best, r.residual_trace[ i ] );
      if( best < 1e-3 ) ++converged;
      worst[ r.strength_a ] = std::max( worst[ r.strength_a ], best );
   }
   std::string per_a;
   for( auto const& [ a, w ] : worst ) per_a += Fmt( " A=%.2f:%.1e", a, w );
   Outcome o;
   o.pass = cells > 0 && converged == cells;
   o.detail = Fmt( "%d of %d cells below 1e-3 within 40 iterations; worst per A%s", converged, cells, per_a.c_str() );
   return o;
}

Outcome NoiselessRoundTrip() {
   RealField const truth = MakeSmoothPhantom( Shape{ 64, 64 }, 7 );
   DpcStack const stack = SimulateIdeal( truth, MakeDefaultTransferFunctions( Optics( 64 )));
   SolverConfig cfg;
   cfg.method = Method::Tikhonov;
   cfg.alpha = 1e-9;
   double const db = Rpsnr( SolveTikhonov( stack, cfg ).phi, truth ).rpsnr_db;
   return { db > 40.0, Fmt( "rpSNR %.2f dB (needs > 40)", db ) };
}

Outcome MetricOracles() {
   Rng rng = MakeRng( 1008 );
   double grid_gap = 0.0, shift_gap = 0.0;
   for( int trial = 0; trial < 10; ++trial ) {
      RealField const truth = RandomField( Shape{ 32, 32 }, rng );
      RealField phi = truth;
      double const bias = Uniform( rng, -2.0, 2.0 );
      for( double& v : phi ) v += bias + 0.3 * Uniform( rng, -1.0, 1.0 );
      double num = Dot( truth, truth ), best = -1e300;
      for( int i = -40000; i <= 40000; ++i ) {
         double const c = i * 1e-4;
         double den = 0.0;
         for( std::size_t k = 0; k < truth.size(); ++k ) {
            double const r = truth[ k ] - phi[ k ] - c;
            den += r * r;
         }
         best = std::max( best, 10.0 * std::log10( num / den ));
      }
      grid_gap = std::max( grid_gap, std::fabs( Rpsnr( phi, truth ).rpsnr_db - best ));
   }
   for( int trial = 0; trial < 100; ++trial ) {
      Shape const s = RandomShape( rng, 4, 32 );
      RealField const truth = RandomField( s, rng );
      RealField const phi = RandomField( s, rng );
      RealField moved = phi;
      double const shift = Uniform( rng, -100.0, 100.0 );
      for( double& v : moved ) v += shift;
      shift_gap = std::max( shift_gap, std::fabs( Rpsnr( moved, truth ).rpsnr_db - Rpsnr( phi, truth ).rpsnr_db ));
   }
   Shape const s{ 32, 32 };
   DpcStack delta;
   delta.tfs.config.shape = s;
   delta.tfs.kernels.assign( 1, ComplexField( s ));
   delta.images.assign( 1, RealField( s ));
   delta.images[ 0 ]( 5, 9 ) = 1.0;
   double const expected = ( 1.0 / 20.0 ) * std::sqrt( std::numbers::pi / 2.0 ) * 16.0 / static_cast< double >( s.size() );
   double const alpha = AdaptiveAlpha( delta );
   Outcome o;
   o.pass = grid_gap <= 1e-3 && shift_gap <= 1e-9 && alpha == expected;
   o.detail = Fmt( "grid search gap %.1e dB, offset invariance %.1e dB, delta alpha %.17g vs %.17g", grid_gap, shift_gap,
                   alpha, expected );
   return o;
}

std::string StripRuntime( std::string const& csv ) {
   std::istringstream in( csv );
   std::string line, out;
   while( std::getline( in, line )) {
      if( !line.empty() && line[ 0 ] != '#' ) {
         std::vector< std::string > cells;
         std::stringstream ls( line );
         std::string cell;
         while( std::getline( ls, cell, ',' )) cells.push_back( cell );
         if( cells.size() == 9 ) cells[ 7 ] = "-";
         line.clear();
         for( auto const& c : cells ) line += c + ",";
      }
      out += line + "\n";
   }
   return out;
}

Outcome FormatSuite() {
   Rng rng = MakeRng( 1009 );
   QpfContainer c;
   c.shape = { 8, 8 };
   c.frames = 3;
   c.payload.resize( 192 );
   for( float& v : c.payload ) v = static_cast< float >( Uniform( rng, -5.0, 5.0 ));
   c.meta = { { "kind", "acceptance" } };
   std::string const bytes = EncodeQpf( c );
   QpfContainer const back = DecodeQpf( bytes );
   bool const bitwise = back.payload.size() == c.payload.size() &&
                        std::memcmp( back.payload.data(), c.payload.data(), 192 * sizeof( float )) == 0 &&
                        back.meta == c.meta && EncodeQpf( back ) == bytes;

   auto code = [ & ]( std::string const& data ) {
      try {
         (void) DecodeQpf( data );
      } catch( Error const& e ) {
         return std::string( ErrorCodeName( e.code() ));
      }
      return std::string( "none" );
   };
   std::string bad_magic = bytes;
   bad_magic[ 3 ] = '2';
   std::string const magic = code( bad_magic );
   std::string const truncated = code( bytes.substr( 0, bytes.size() - 4 ));

   BenchConfig cfg;
   cfg.trials = 1;
   cfg.size = 32;
   cfg.snr_levels = { 20.0 };
   std::vector< BenchPattern > patterns{ { "shapes", MakeShapesPhantom( Shape{ 32, 32 }, 2 ) } };
   std::string const first = FormatBenchCsv( RunBench( patterns, cfg ), cfg );
   cfg.jobs = 2;
   std::string const second = FormatBenchCsv( RunBench( patterns, cfg ), cfg );
   bool const deterministic = StripRuntime( first ) == StripRuntime( second );

   Outcome o;
   o.pass = bitwise && magic == "magic_mismatch" && truncated == "truncated_payload" && deterministic;
   o.detail = Fmt( "round trip %s, bad magic -> %s, truncation -> %s, bench csv %s", bitwise ? "bitwise" : "differs",
                   magic.c_str(), truncated.c_str(), deterministic ? "deterministic" : "differs" );
   return o;
}

} // namespace

int main() {
   int failures = 0;
   auto report = [ & ]( int id, char const* name, std::function< Outcome() > const& fn ) {
      Outcome o;
      try {
         o = fn();
      } catch( std::exception const& e ) {
         o = { false, std::string( "exception: " ) + e.what() };
      }
      failures += o.pass ? 0 : 1;
      std::printf( "criterion %d %-24s %s  %s\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str() );
      std::fflush( stdout );
   };
   report( 1, "operators", OperatorSuite );
   report( 2, "transfer functions", PtfSuite );
   report( 3, "solver oracles", SolverOracles );
   report( 4, "dc invariance", DcInvariance );
   ProtocolRun const run = RunProtocol();
   report( 5, "trend reproduction", [ & ] { return TrendReproduction( run ); } );
   report( 6, "l1 convergence", [ & ] { return Convergence( run ); } );
   report( 7, "noiseless round trip", NoiselessRoundTrip );
   report( 8, "metric oracles", MetricOracles );
   report( 9, "formats", FormatSuite );
   std::printf( "%d of 9 criteria failed\n", failures );
   return failures == 0 ? 0 : 1;
}
