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

// Forward simulation: DPC image formation from intensity pairs, ideal DPC
// stacks from a phase map, and the noise + background degradation model.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qdpc/field.hpp"
#include "qdpc/optics.hpp"

namespace qdpc {

enum class Provenance { Measured, Simulated };

struct DegradationSpec {
   /// +infinity means noiseless.
   double snr_db = std::numeric_limits< double >::infinity();
   double strength_a = 0.0;
   std::uint64_t seed = 0;
   double background_sigma_fraction = 1.0 / 8.0;
};

void Validate( DegradationSpec const& spec );

struct DpcStack {
   std::vector< RealField > images;
   TransferFunctionSet tfs;
   Provenance provenance = Provenance::Simulated;
   std::optional< DegradationSpec > degradation;

   std::size_t size() const { return images.size(); }
   Shape shape() const { return images.empty() ? tfs.shape() : images.front().shape(); }
};

/// Checks that all images share one shape matching the kernels, one image per kernel.
void Validate( DpcStack const& stack );

/// (I_r - I_l) / (I_r + I_l). Throws NonpositiveIntensity, reporting the number
/// of offending pixels, if the denominator is not positive anywhere.
RealField DpcFromIntensityPair( RealField const& right, RealField const& left );

/// images[n] = H_n applied to phi.
DpcStack SimulateIdeal( RealField const& phi, TransferFunctionSet const& tfs );

/// Seeded low-frequency background: white Gaussian noise filtered by an
/// isotropic Gaussian of std sigma_fraction * min(W, H) pixels (periodic),
/// then mapped affinely to exactly [0, 1].
RealField MakeBackground( Shape const& shape, std::uint64_t seed, double sigma_fraction );

/// Per image n: s + xi_n + A (max s - min s) B_n, with xi_n Gaussian of std
/// rms(s) 10^(-snr/20) and B_n an independent background. Each n draws from
/// substreams derived from (seed, n).
DpcStack Degrade( DpcStack const& stack, DegradationSpec const& spec );

/// Standard deviation of the noise added to an image for a given SNR.
double NoiseSigma( RealField const& ideal, double snr_db );

/// Seeds used by Degrade for image n.
std::uint64_t NoiseSeed( std::uint64_t seed, std::size_t n );
std::uint64_t BackgroundSeed( std::uint64_t seed, std::size_t n );

} // namespace qdpc
