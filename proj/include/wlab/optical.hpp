#pragma once

#include <array>

#include "wlab/qcore.hpp"

namespace wlab::optical {

/// Parametric coupling of a pumped atomic medium to three weak modes.
/// hbar = 1 throughout; the effective coupling is kappa = q * |pump|.
struct OpticalParams {
  std::array<Complex, 3> g = {1.0, 1.0, 1.0};
  Complex pump = 1.0;
  double q = 1.0;
  double t = 0.0;
};

/// Three-mode bosonic state truncated to at most one photon per mode.
/// Index convention: |n1 n2 n3> sits at (n1 << 2) | (n2 << 1) | n3.
/// First-order states are reported unnormalized together with their norm.
struct FockState3 {
  Eigen::Matrix<Complex, 8, 1> amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// q (pump * sum_k g_k b_k^dag + h.c.) in the truncated space; Hermitian,
/// and it sends the vacuum to q * pump * (g1|100> + g2|010> + g3|001>).
Eigen::Matrix<Complex, 8, 8> effective_hamiltonian(const OpticalParams& p);

/// |000> - i q pump t (g1|100> + g2|010> + g3|001>), the short-time state.
FockState3 first_order_state(const OpticalParams& p);

/// exp(-i H t)|000> via eigendecomposition of the truncated Hamiltonian.
FockState3 exact_evolution(const OpticalParams& p);

struct WFidelityResult {
  bool defined = false;      // false when the single-photon sector is empty
  double value = 0.0;        // fidelity of the normalized sector vs |w(g)>
  double sector_weight = 0;  // squared norm of the single-photon sector
};

/// Fidelity between the normalized single-photon sector of the state and the
/// normalized g1|100> + g2|010> + g3|001>.
WFidelityResult w_fidelity(const FockState3& state,
                           const std::array<Complex, 3>& g);

struct OpticalReport {
  std::array<Complex, 3> g;
  double kappa = 0.0;
  double t = 0.0;
  double norm_first_order = 0.0;
  double overlap_exact_first = 0.0;  // |<exact|first-order normalized>|
  WFidelityResult w_fid_exact;
};

OpticalReport report(const OpticalParams& p);

}  // namespace wlab::optical
