#ifndef CORANK_TOLERANCES_HPP_
#define CORANK_TOLERANCES_HPP_

namespace corank {

/// Every threshold used to turn a floating-point quantity into a discrete
/// decision. Exact (rational) inputs never consult these.
struct Tolerances {
  double eps_jet = 1e-10;   // "vanishing" Taylor coefficients
  double eps_rank = 1e-9;   // singular values relative to the largest one
  double eps_orth = 1e-12;  // orthogonality of frames and rotations
  double eps_disc = 1e-10;  // relative discriminant threshold for Q(y)

  // Oracle tolerances.
  double oracle_kappa = 1e-7;
  double oracle_scan = 1e-6;
  double oracle_hessian = 1e-6;
  double oracle_cluster = 1e-3;
  double fd_step = 1e-4;
};

}  // namespace corank

#endif  // CORANK_TOLERANCES_HPP_
