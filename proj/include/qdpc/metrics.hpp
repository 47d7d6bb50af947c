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

#include <limits>

#include "qdpc/field.hpp"
#include "qdpc/forward.hpp"

namespace qdpc {

/// Regressed phase SNR. rpsnr_db is +infinity when the offset-corrected
/// residual vanishes.
struct MetricReport {
   double rpsnr_db = 0.0;
   double offset_c = 0.0;
};

/// rpSNR(phi, truth) = max_c 10 log10(|truth|^2 / |truth - (phi + c)|^2), with
/// the closed-form optimum c = mean(truth - phi). Throws ZeroNormTruth.
MetricReport Rpsnr( RealField const& phi, RealField const& truth );

/// Noise-adaptive regularization weight
///   alpha = (1/20) sqrt(pi/2) / (N W H) * sum_n sum_xy |s_n (*) L|,
/// L = [-1 2 -1; 2 -4 2; -1 2 -1], periodic convolution.
double AdaptiveAlpha( DpcStack const& stack );

/// The constant (1/20) sqrt(pi/2) of the estimator.
double NoiseSensorScale();

/// Sum over the grid of |f (*) L| with periodic boundaries.
double LaplacianAbsSum( RealField const& f );

/// Floor applied when an adaptive alpha is used by a solver.
inline constexpr double kAlphaFloor = 1e-8;

} // namespace qdpc
