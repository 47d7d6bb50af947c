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
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdpc/error.hpp"
#include "qdpc/metrics.hpp"
#include "qdpc/optics.hpp"
#include "qdpc/phantom.hpp"
#include "support.hpp"

using namespace qdpc;
using namespace qdpc::test;

namespace {

double Ratio( RealField const& truth, RealField const& phi, double c ) {
   double num = 0.0, den = 0.0;
   for( std::size_t i = 0; i < truth.size(); ++i ) {
      num += truth[ i ] * truth[ i ];
      double const r = truth[ i ] - phi[ i ] - c;
      den += r * r;
   }
   return 10.0 * std::log10( num / den );
}

DpcStack StackOf( std::vector< RealField > images ) {
   // The estimator only reads the images; zero kernels keep small shapes legal.
   DpcStack stack;
   stack.tfs.config.shape = images.front().shape();
   stack.tfs.kernels.assign( images.size(), ComplexField( images.front().shape() ));
   stack.images = std::move( images );
   return stack;
}

// Brute-force periodic 3x3 stencil sum.
double DirectLaplacianAbsSum( RealField const& f ) {
   static constexpr double kL[ 3 ][ 3 ] = { { -1, 2, -1 }, { 2, -4, 2 }, { -1, 2, -1 } };
   Shape const s = f.shape();
   double total = 0.0;
   for( std::size_t l = 0; l < s.height; ++l ) {
      for( std::size_t k = 0; k < s.width; ++k ) {
         double acc = 0.0;
         for( int dy = -1; dy <= 1; ++dy ) {
            for( int dx = -1; dx <= 1; ++dx ) {
               acc += kL[ dy + 1 ][ dx + 1 ] * f( Wrap( long( k ) + dx, s.width ), Wrap( long( l ) + dy, s.height ));
            }
         }
         total += std::fabs( acc );
      }
   }
   return total;
}

} // namespace

TEST_CASE( "rpSNR of an offset copy is infinite" ) {
   Rng rng = MakeRng( 1 );
   RealField const truth = RandomField( Shape{ 17, 11 }, rng );
   RealField phi = truth;
   for( double& v : phi ) v += 5.0;
   MetricReport const m = Rpsnr( phi, truth );
   CHECK( std::isinf( m.rpsnr_db ));
   CHECK( m.rpsnr_db > 0 );
   CHECK( m.offset_c == doctest::Approx( -5.0 ).epsilon( 1e-12 ));
}

TEST_CASE( "rpSNR ignores a constant shift of the reconstruction" ) {
   Rng rng = MakeRng( 2 );
   for( int trial = 0; trial < 50; ++trial ) {
      Shape const s = RandomShape( rng );
      RealField const truth = RandomField( s, rng );
      RealField const phi = RandomField( s, rng );
      RealField shifted = phi;
      double const shift = Uniform( rng, -100.0, 100.0 );
      for( double& v : shifted ) v += shift;
      CHECK( std::fabs( Rpsnr( shifted, truth ).rpsnr_db - Rpsnr( phi, truth ).rpsnr_db ) <= 1e-9 );
   }
}

TEST_CASE( "rpSNR offset matches a grid search" ) {
   Rng rng = MakeRng( 3 );
   for( int trial = 0; trial < 5; ++trial ) {
      RealField const truth = RandomField( Shape{ 32, 32 }, rng );
      RealField phi = truth;
      double const bias = Uniform( rng, -2.0, 2.0 );
      for( double& v : phi ) v += bias + 0.3 * Uniform( rng, -1.0, 1.0 );
      double best_c = 0.0, best = -1e300;
      for( int i = -40000; i <= 40000; ++i ) {
         double const c = i * 1e-4;
         double const v = Ratio( truth, phi, c );
         if( v > best ) {
            best = v;
            best_c = c;
         }
      }
      MetricReport const m = Rpsnr( phi, truth );
      CHECK( std::fabs( m.offset_c - best_c ) <= 1e-3 );
      CHECK( m.rpsnr_db >= best - 1e-9 );
      CHECK( m.rpsnr_db == doctest::Approx( Ratio( truth, phi, m.offset_c )).epsilon( 1e-12 ));
   }
}

TEST_CASE( "rpSNR is invariant to a common pixel permutation" ) {
   Rng rng = MakeRng( 4 );
   RealField const truth = RandomField( Shape{ 12, 9 }, rng );
   RealField const phi = RandomField( Shape{ 12, 9 }, rng );
   std::vector< std::size_t > order( truth.size() );
   for( std::size_t i = 0; i < order.size(); ++i ) order[ i ] = i;
   std::shuffle( order.begin(), order.end(), rng );
   RealField pt( truth.shape() ), pp( phi.shape() );
   for( std::size_t i = 0; i < order.size(); ++i ) {
      pt[ i ] = truth[ order[ i ]];
      pp[ i ] = phi[ order[ i ]];
   }
   CHECK( Rpsnr( pp, pt ).rpsnr_db == doctest::Approx( Rpsnr( phi, truth ).rpsnr_db ).epsilon( 1e-12 ));
}

TEST_CASE( "rpSNR rejects bad input" ) {
   RealField const zero( Shape{ 4, 4 } );
   RealField one( Shape{ 4, 4 }, 1.0 );
   try {
      (void) Rpsnr( one, zero );
      FAIL( "zero truth accepted" );
   } catch( Error const& e ) {
      CHECK( e.code() == ErrorCode::ZeroNormTruth );
   }
   CHECK_THROWS_AS( Rpsnr( RealField( Shape{ 4, 5 } ), one ), Error );
}

TEST_CASE( "Laplacian stencil sum matches brute force" ) {
   Rng rng = MakeRng( 5 );
   for( int trial = 0; trial < 30; ++trial ) {
      RealField const f = RandomField( RandomShape( rng, 4, 20 ), rng );
      double const direct = DirectLaplacianAbsSum( f );
      CHECK( std::fabs( LaplacianAbsSum( f ) - direct ) <= 1e-12 * std::max( 1.0, direct ));
   }
}

TEST_CASE( "adaptive alpha examples" ) {
   Shape const s{ 16, 16 };
   RealField delta( s );
   delta( 7, 3 ) = 1.0;
   double const expected = ( 1.0 / 20.0 ) * std::sqrt( std::numbers::pi / 2.0 ) * 16.0 / 256.0;
   CHECK( NoiseSensorScale() == ( 1.0 / 20.0 ) * std::sqrt( std::numbers::pi / 2.0 ));
   CHECK( AdaptiveAlpha( StackOf( { delta } )) == doctest::Approx( expected ).epsilon( 1e-15 ));
   CHECK( AdaptiveAlpha( StackOf( { RealField( s ), RealField( s ) } )) == 0.0 );
}

TEST_CASE( "adaptive alpha tracks white noise level" ) {
   // The L stencil has squared norm 36, so |n (*) L| has mean 6 sqrt(2/pi) sigma.
   Shape const s{ 128, 128 };
   double const expected = NoiseSensorScale() * 6.0 * std::sqrt( 2.0 / std::numbers::pi );
   double mean_ratio = 0.0;
   for( std::uint64_t seed = 0; seed < 10; ++seed ) {
      Rng rng = MakeRng( 100 + seed );
      std::normal_distribution< double > normal( 0.0, 1.0 );
      RealField noise( s );
      for( double& v : noise ) v = normal( rng );
      double const a1 = AdaptiveAlpha( StackOf( { noise } ));
      double const k = Uniform( rng, 0.1, 10.0 );
      CHECK( AdaptiveAlpha( StackOf( { k * noise } )) == doctest::Approx( k * a1 ).epsilon( 1e-12 ));
      CHECK( std::fabs( a1 / expected - 1.0 ) <= 0.05 );
      mean_ratio += a1 / expected / 10.0;
   }
   CHECK( std::fabs( mean_ratio - 1.0 ) <= 0.02 );
}

TEST_CASE( "adaptive alpha ignores constants and averages images" ) {
   Rng rng = MakeRng( 6 );
   for( int trial = 0; trial < 20; ++trial ) {
      Shape const s = RandomShape( rng, 4, 30 );
      RealField const a = RandomField( s, rng );
      RealField const b = RandomField( s, rng );
      RealField ac = a;
      double const shift = Uniform( rng, -50.0, 50.0 );
      for( double& v : ac ) v += shift;
      double const base = AdaptiveAlpha( StackOf( { a } ));
      CHECK( std::fabs( AdaptiveAlpha( StackOf( { ac } )) - base ) <= 1e-12 * std::max( 1.0, base ) * 50 );
      double const pair = AdaptiveAlpha( StackOf( { a, b } ));
      double const mean = 0.5 * ( base + AdaptiveAlpha( StackOf( { b } )));
      CHECK( pair == doctest::Approx( mean ).epsilon( 1e-12 ));
   }
}
