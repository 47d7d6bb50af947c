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

// Data-parallel inner loops shared by the operators and solvers.
//
// Every routine exists as a scalar reference implementation and, where the
// target supports it, an AVX2 or NEON variant. Variants are required to be
// bit-identical to the reference: no fused multiply-add, the same operation
// order per element, and reductions striped over four lanes in both paths.
// The active table is chosen once at startup from CPU features and may be
// overridden with QDPC_KERNELS=scalar|avx2|neon.

#include <cstddef>
#include <string_view>

namespace qdpc::kernels {

struct KernelTable {
   char const* name;

   // out = sign(v) * max(|v| - t, 0)
   void ( *shrink_aniso )( double const* v, double t, double* out, std::size_t n );
   // acc += x * x
   void ( *accumulate_squares )( double* acc, double const* x, std::size_t n );
   // out = x * (max(m - t, 0) / m) with m = sqrt(sum_sq); 0 where m == 0
   void ( *group_shrink_scale )( double const* sum_sq, double const* x, double t, double* out,
                                 std::size_t n );

   // Periodic forward difference and its exact adjoint on a width x height grid.
   void ( *diff_x )( double const* in, double* out, std::size_t width, std::size_t height );
   void ( *diff_y )( double const* in, double* out, std::size_t width, std::size_t height );
   void ( *diff_x_adjoint )( double const* in, double* out, std::size_t width, std::size_t height );
   void ( *diff_y_adjoint )( double const* in, double* out, std::size_t width, std::size_t height );

   void ( *add )( double const* a, double const* b, double* out, std::size_t n );
   void ( *sub )( double const* a, double const* b, double* out, std::size_t n );
   // out = a + b - c
   void ( *add_sub )( double const* a, double const* b, double const* c, double* out,
                      std::size_t n );

   // Interleaved complex arrays of n elements (2n doubles).
   // acc += conj(a) * b
   void ( *conj_mul_acc )( double* acc, double const* a, double const* b, std::size_t n );
   // out = a * b
   void ( *cmul )( double const* a, double const* b, double* out, std::size_t n );
   // acc += |a|^2 (acc is real, n elements)
   void ( *abs2_acc )( double* acc, double const* a, std::size_t n );
   // out = z / d (d real)
   void ( *div_real )( double const* z, double const* d, double* out, std::size_t n );
   // out = z * r (r real)
   void ( *scale_real )( double const* z, double const* r, double* out, std::size_t n );

   // Four-lane striped sum of a[i] * b[i], lanes combined as (l0 + l1) + (l2 + l3).
   double ( *dot )( double const* a, double const* b, std::size_t n );
};

KernelTable const& Scalar();
/// nullptr when the variant is not compiled in or the CPU lacks support.
KernelTable const* Avx2();
KernelTable const* Neon();

/// The table used by the library.
KernelTable const& Active();
/// Select by name ("scalar", "avx2", "neon"); returns false if unavailable.
bool SelectBackend( std::string_view name );

} // namespace qdpc::kernels
