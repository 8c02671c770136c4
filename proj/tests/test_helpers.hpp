#pragma once

#include <complex>
#include <random>
#include <vector>

#include "wlab/qcore.hpp"

namespace test_helpers {

using wlab::Complex;
using wlab::CVector;

inline CVector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = Complex(gauss(rng), gauss(rng));
  }
  return v / v.norm();
}

inline wlab::PureState random_state(std::vector<wlab::QubitLabel> labels,
                                    std::mt19937_64& rng) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  return wlab::PureState(std::move(labels), random_unit_vector(dim, rng));
}

// Pair (alpha, beta) with |alpha|^2 + |beta|^2 = 1.
inline std::pair<Complex, Complex> random_amplitude_pair(std::mt19937_64& rng) {
  const CVector v = random_unit_vector(2, rng);
  return {v(0), v(1)};
}

// Independent Kronecker-product oracle: plain index loops, no library calls.
inline CVector kron_oracle(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      out(i * b.size() + j) = a(i) * b(j);
    }
  }
  return out;
}

}  // namespace test_helpers
