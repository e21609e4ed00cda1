// Copyright (c) 2026 The fsolink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>

#include "fsolink/beam.hpp"
#include "fsolink/receiver.hpp"

namespace fsolink::kern {

/// Numeric backend for the batched link chain. Scalar is the reference
/// implementation (plain loops over the module functions, libm math); Avx2 is
/// the vectorized variant, equivalence-tested against Scalar. Auto resolves
/// to the best backend the CPU supports.
enum class Backend { Auto, Scalar, Avx2 };

bool avx2_available();
Backend resolve_backend(Backend requested);
const char* backend_name(Backend b);
Backend backend_from_name(const std::string& name);  // throws DomainError

/// Per-batch constants for the link chain. All strokes arrive through the
/// input arrays; the strategy distinction is already folded into them (see
/// LinkBatchIn), so the kernel itself is strategy-agnostic.
struct LinkBatchParams {
  BeamParams beam;       // power_w is the grid point's emitted power
  ReceiverParams rx;
  PowerMethod method = PowerMethod::ExactIntegral;
  double z_m = 0.0;
  double offset_x_m = 0.0;  // rest offset seen by an uncompensated beam
  double offset_y_m = 0.0;
  double half_len1_m = 0.0;  // yaw/pitch lever arms
  double half_len2_m = 0.0;
  double i_b_w_per_m2 = 0.0;
};

/// One lane per timestep. pert1/pert2 are the stroke values that drive
/// yaw/pitch of each vehicle; comp is the compensation value subtracted from
/// the displacement (zero except under dynamic signaling). The displacement
/// per axis is
///   offset + pert2 - pert1 - tan(atan(pert1 / half_len1)) * z - comp.
struct LinkBatchIn {
  std::span<const double> pert1_x, pert2_x, comp_x;
  std::span<const double> pert1_y, pert2_y, comp_y;
};

struct LinkBatchOut {
  std::span<double> dx_m, dy_m;
  std::span<double> beta_x_rad, beta_y_rad;
  std::span<double> p_r_w, snr, r_bps;
};

/// Runs the chain strokes -> rotations -> displacement -> received power ->
/// SNR -> throughput for every timestep. Throws ModelError (with the first
/// offending index) if a rotation reaches pi/2.
void run_link_batch(const LinkBatchIn& in, const LinkBatchOut& out,
                    const LinkBatchParams& params,
                    Backend backend = Backend::Auto);

}  // namespace fsolink::kern
