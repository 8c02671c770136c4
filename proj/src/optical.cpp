#include "wlab/optical.hpp"

#include <cmath>
#include <stdexcept>

namespace wlab::optical {

namespace {

using Matrix8 = Eigen::Matrix<Complex, 8, 8>;
using Vector8 = Eigen::Matrix<Complex, 8, 1>;

void check_params(const OpticalParams& p) {
  if (std::abs(p.g[0]) == 0.0 && std::abs(p.g[1]) == 0.0 &&
      std::abs(p.g[2]) == 0.0) {
    throw std::invalid_argument("at least one coupling must be nonzero");
  }
  if (p.t < 0.0) {
    throw std::invalid_argument("interaction time must be non-negative");
  }
}

}  // namespace

Eigen::Matrix<Complex, 8, 8> effective_hamiltonian(const OpticalParams& p) {
  check_params(p);
  Matrix8 h = Matrix8::Zero();
  // Creation on mode k flips bit (2 - k... ) — mode 1 is the leading bit.
  const std::array<int, 3> bit = {4, 2, 1};
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 8; ++i) {
      if (i & bit[k]) continue;  // already occupied, truncated away
      const int j = i | bit[k];
      h(j, i) += p.q * p.pump * p.g[k];             // creation
      h(i, j) += p.q * std::conj(p.pump * p.g[k]);  // annihilation
    }
  }
  return h;
}

FockState3 first_order_state(const OpticalParams& p) {
  check_params(p);
  FockState3 s;
  s.amplitudes.setZero();
  s.amplitudes(0) = 1.0;
  const Complex prefactor = Complex(0.0, -1.0) * p.q * p.pump * p.t;
  s.amplitudes(4) = prefactor * p.g[0];
  s.amplitudes(2) = prefactor * p.g[1];
  s.amplitudes(1) = prefactor * p.g[2];
  return s;
}

FockState3 exact_evolution(const OpticalParams& p) {
  const Matrix8 h = effective_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Matrix8> es(h);
  Vector8 vac = Vector8::Zero();
  vac(0) = 1.0;
  Vector8 coeffs = es.eigenvectors().adjoint() * vac;
  for (int i = 0; i < 8; ++i) {
    coeffs(i) *= std::polar(1.0, -es.eigenvalues()(i) * p.t);
  }
  FockState3 s;
  s.amplitudes = es.eigenvectors() * coeffs;
  return s;
}

WFidelityResult w_fidelity(const FockState3& state,
                           const std::array<Complex, 3>& g) {
  Eigen::Vector3cd sector(state.amplitudes(4), state.amplitudes(2),
                          state.amplitudes(1));
  Eigen::Vector3cd w(g[0], g[1], g[2]);
  WFidelityResult result;
  result.sector_weight = sector.squaredNorm();
  if (result.sector_weight <= tol::zero || w.norm() <= tol::zero) {
    return result;
  }
  result.defined = true;
  const Complex ov = w.normalized().dot(sector.normalized());
  result.value = std::norm(ov);
  return result;
}

OpticalReport report(const OpticalParams& p) {
  OpticalReport r;
  r.g = p.g;
  r.kappa = p.q * std::abs(p.pump);
  r.t = p.t;
  const FockState3 first = first_order_state(p);
  const FockState3 exact = exact_evolution(p);
  r.norm_first_order = first.norm();
  r.overlap_exact_first =
      std::abs(exact.amplitudes.dot(first.amplitudes)) / first.norm();
  r.w_fid_exact = w_fidelity(exact, p.g);
  return r;
}

}  // namespace wlab::optical
