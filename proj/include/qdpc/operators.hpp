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

// Field-core operators: FFT pair, periodic finite differences and their exact
// adjoints, Fourier symbols of the differences, spectral convolution.
//
// Conventions: forward transform unnormalized, inverse scaled by 1/(W*H);
// all boundaries periodic.

#include "qdpc/field.hpp"

namespace qdpc {

enum class Axis { X, Y };

ComplexField Fft2( RealField const& f );
ComplexField Fft2( ComplexField const& f );

/// Inverse transform of a spectrum that must be Hermitian. Throws
/// ImaginaryResidue when max|imag| exceeds 1e-8 * max|real| (with a floor at
/// the roundoff level of the input spectrum), instead of silently dropping it.
RealField Ifft2( ComplexField const& spectrum );
ComplexField Ifft2Complex( ComplexField const& spectrum );

/// Fourier multipliers of the periodic forward differences:
///   dx(k,l) = exp(i 2 pi k / W) - 1,  dy(k,l) = exp(i 2 pi l / H) - 1,
///   dsq = |dx|^2 + |dy|^2 = 4 sin^2(pi k / W) + 4 sin^2(pi l / H).
struct SpectralSymbols {
   ComplexField dx;
   ComplexField dy;
   RealField dsq;

   ComplexField const& along( Axis axis ) const { return axis == Axis::X ? dx : dy; }
};

SpectralSymbols MakeSpectralSymbols( Shape const& shape );

/// Periodic forward difference: (grad f)(k) = f(k+1) - f(k).
RealField Grad( RealField const& f, Axis axis );
/// Exact adjoint of Grad: (grad^T g)(k) = g(k-1) - g(k).
RealField GradAdjoint( RealField const& g, Axis axis );

/// ifft2(hspec .* fft2(f)). A complex spectrum must be Hermitian.
RealField ApplyTransfer( RealField const& f, RealField const& hspec );
RealField ApplyTransfer( RealField const& f, ComplexField const& hspec );

} // namespace qdpc
