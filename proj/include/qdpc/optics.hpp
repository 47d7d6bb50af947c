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

// Frequency grids, pupils, half-plane illumination sources and the DPC phase
// transfer functions derived from them.

#include <string>
#include <vector>

#include "qdpc/field.hpp"

namespace qdpc {

/// Microscope and sampling parameters. Lengths in micrometres.
struct OpticalConfig {
   double wavelength_um = 0.53;
   double na = 0.3;
   double magnification = 10.0;
   double camera_pixel_um = 3.46;
   Shape shape{ 128, 128 };

   /// Object-space pixel pitch.
   double pixel_um() const { return camera_pixel_um / magnification; }
   /// Pupil cutoff radius na / wavelength, cycles per micrometre.
   double cutoff() const { return na / wavelength_um; }
};

/// Throws InvalidConfig for non-physical values or when the pupil does not
/// fit inside the Nyquist band (cutoff >= 1 / (2 * pixel)).
void Validate( OpticalConfig const& cfg );

enum class SourceKind { HalfDisc, HalfAnnulus };
enum class SourceSide { Positive, Negative };

struct SourceSpec {
   SourceKind kind = SourceKind::HalfDisc;
   /// 0 splits the pupil along x (left/right), pi/2 along y (top/bottom).
   double axis_angle = 0.0;
   SourceSide side = SourceSide::Positive;
   /// Inner radius as a fraction of the cutoff; ignored for HalfDisc.
   double inner_radius_fraction = 0.0;

   SourceSpec mirrored() const {
      SourceSpec s = *this;
      s.side = side == SourceSide::Positive ? SourceSide::Negative : SourceSide::Positive;
      return s;
   }
};

struct FrequencyGrid {
   RealField fx;   // cycles/um, unshifted FFT layout
   RealField fy;
};

FrequencyGrid MakeFrequencyGrid( OpticalConfig const& cfg );

/// Ideal binary pupil: 1 inside the cutoff radius, 0 outside.
RealField MakePupil( OpticalConfig const& cfg );

/// Binary half-plane source mask. Pixels on the dividing line belong to
/// neither side. Throws DegenerateSource if the mask is empty.
RealField MakeSource( OpticalConfig const& cfg, SourceSpec const& spec );

/// Oppositely oblique source pair (S+, S-).
struct SourcePair {
   RealField positive;
   RealField negative;
};

SourcePair MakeSourcePair( OpticalConfig const& cfg, SourceSpec const& spec );

/// cross(u) = sum_u' s(u') p(u') p(u' + u) over the physical (non-wrapping)
/// frequency offsets, evaluated with a zero-padded FFT correlation.
RealField SourcePupilCorrelation( RealField const& source, RealField const& pupil );

/// DPC phase transfer function of a source pair under the weak-object
/// approximation,
///   H(u) = (W+(u) - W-(u)) / (B+ + B-),  W(u) = i [cross(u) - cross(-u)],
///   B = sum s |p|^2.
/// The result is purely imaginary and odd, so its spatial kernel is real.
/// Throws DegenerateSource when B+ + B- == 0 and SymmetryViolation when the
/// construction breaks Hermitian symmetry, oddness, or H(0) == 0.
ComplexField ComputePtf( OpticalConfig const& cfg, SourcePair const& pair );

/// Peak |H| of a kernel.
double PeakMagnitude( ComplexField const& h );

/// Verifies the transfer-function invariants; throws SymmetryViolation.
void CheckTransferInvariants( ComplexField const& h, double tolerance = 1e-9 );

enum class PairAxis { LeftRight, TopBottom };

std::string ToString( PairAxis axis );
PairAxis ParsePairAxis( std::string const& name );

struct TransferFunctionSet {
   OpticalConfig config;
   std::vector< SourceSpec > sources;   // positive side of each pair
   std::vector< ComplexField > kernels;

   std::size_t size() const { return kernels.size(); }
   Shape shape() const { return config.shape; }
};

/// One kernel per requested pair axis; `source` supplies kind and inner
/// radius, the axis angle and side are set per pair.
TransferFunctionSet MakeTransferFunctions( OpticalConfig const& cfg, SourceSpec const& source,
                                           std::vector< PairAxis > const& axes );

/// The default two-pair geometry: left/right then top/bottom half-discs.
TransferFunctionSet MakeDefaultTransferFunctions( OpticalConfig const& cfg );

} // namespace qdpc
