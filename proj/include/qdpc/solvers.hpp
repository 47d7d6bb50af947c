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

// Phase reconstruction from DPC stacks.
//
//   tikhonov    sum |s - H phi|^2 + alpha |phi|^2                  closed form
//   tv_dpc      sum |s - H phi|^2 + alpha |grad phi|_1             HQS continuation
//   iso_dpc     sum |s - H phi|^2 + alpha |grad phi|^2 + beta |G phi|^2   closed form
//   l2_retinex  sum |grad s - H grad phi|^2 + alpha |grad phi|_1   HQS continuation
//   l1_retinex  gamma sum |grad s - H grad phi|_1 + alpha |grad phi|_1   split Bregman
//
// The transfer functions are complex (purely imaginary), so H^T is applied
// as conj(H) and H^T H as |H|^2 in the Fourier domain. Outputs are returned
// exactly as produced by the linear algebra; no mean is subtracted. Since
// H(0) = 0 the DC of phi is pinned near zero by the eta term.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdpc/field.hpp"
#include "qdpc/forward.hpp"

namespace qdpc {

enum class Method { Tikhonov, TvDpc, IsoDpc, L2Retinex, L1Retinex };
enum class TvMode { Isotropic, Anisotropic };

/// Canonical names: tikhonov, tv_dpc, iso_dpc, l2_retinex, l1_retinex.
std::string ToString( Method method );
/// Accepts canonical names and the CLI aliases tv, iso, l2retinex, l1retinex.
Method ParseMethod( std::string const& name );
std::string ToString( TvMode mode );
TvMode ParseTvMode( std::string const& name );

struct SolverConfig {
   Method method = Method::TvDpc;
   std::optional< double > alpha;        // empty = adaptive (noise sensor)
   std::optional< double > beta;         // empty = 2 alpha (Iso-DPC)
   double gamma = 0.1;                   // L1-Retinex fidelity weight
   double gamma0 = 1.0;                  // split Bregman fidelity penalty
   std::optional< double > alpha0_init;  // empty = alpha (HQS continuation start)
   double alpha0_max = 1e5;
   double bregman_alpha0 = 1.0;          // split Bregman TV penalty
   int max_iterations = 40;
   double eta = 1e-6;
   TvMode tv_mode = TvMode::Isotropic;
   double iso_gauss_sigma = 1.0;         // pixels
};

/// Fills alpha (adaptive, floored at kAlphaFloor), beta and alpha0_init, then
/// validates. The result has every optional engaged.
SolverConfig Resolve( SolverConfig cfg, DpcStack const& stack );
void Validate( SolverConfig const& cfg );

struct ReconstructionResult {
   RealField phi;
   int iterations_run = 0;
   /// |phi^{k+1} - phi^k| / max(|phi^k|, 1e-12), one entry per iteration.
   std::vector< double > residual_trace;
   SolverConfig config_echo;
};

/// Internal state exposed to observers after each phi-update. References
/// are to the auxiliary variables that produced this phi.
struct IterationView {
   int iteration = 0;
   double alpha0 = 0.0;
   RealField const* phi = nullptr;
   RealField const* gx = nullptr;
   RealField const* gy = nullptr;
   // split Bregman only: psi[n][v], b[n][v], g[v]
   std::vector< std::vector< RealField > > const* psi = nullptr;
   std::vector< std::vector< RealField > > const* b = nullptr;
   RealField const* bregman_gx = nullptr;
   RealField const* bregman_gy = nullptr;
};

using IterationObserver = std::function< void( IterationView const& ) >;

// Proximal maps of t |.|_1 (anisotropic) and t |(.,.)|_2 (isotropic).
RealField ShrinkAniso( RealField const& v, double t );
std::pair< RealField, RealField > ShrinkIso( RealField const& vx, RealField const& vy, double t );

ReconstructionResult SolveTikhonov( DpcStack const& stack, SolverConfig const& cfg );
ReconstructionResult SolveTvDpc( DpcStack const& stack, SolverConfig const& cfg,
                                 IterationObserver const& observer = {} );
ReconstructionResult SolveIsoDpc( DpcStack const& stack, SolverConfig const& cfg );
ReconstructionResult SolveL2Retinex( DpcStack const& stack, SolverConfig const& cfg,
                                     IterationObserver const& observer = {} );
ReconstructionResult SolveL1Retinex( DpcStack const& stack, SolverConfig const& cfg,
                                     IterationObserver const& observer = {} );

/// Resolves cfg against the stack and runs cfg.method.
ReconstructionResult Reconstruct( DpcStack const& stack, SolverConfig const& cfg );

/// Unit-sum periodic Gaussian of std sigma pixels, returned as |FFT|^2.
RealField GaussianPenaltySymbol( Shape const& shape, double sigma );

} // namespace qdpc
