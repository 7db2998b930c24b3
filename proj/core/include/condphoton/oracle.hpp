#pragma once

// Brute-force two-mode Fock-space evaluation of the conditional maps, used to
// cross-check the distribution-level transforms at small cutoffs.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "condphoton/add.hpp"
#include "condphoton/detectors.hpp"
#include "condphoton/states.hpp"
#include "condphoton/subtract.hpp"

namespace condphoton {

using ComplexMatrix = Eigen::MatrixXcd;

struct SingleModeDensityMatrix {
  ComplexMatrix entries;

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
  double trace() const { return entries.trace().real(); }
  std::vector<double> diagonal() const;
};

/// Joint state in the basis |n_a, n_b>, index n_a * dim_b + n_b.
struct TwoModeDensityMatrix {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  ComplexMatrix entries;

  std::size_t index(std::size_t n_a, std::size_t n_b) const { return n_a * dim_b + n_b; }
};

/// |sqrt(n0)><sqrt(n0)| truncated to `dim` levels. Throws TruncationError
/// when the discarded weight exceeds 1e-8.
SingleModeDensityMatrix coherent_density_matrix(double n0, std::size_t dim);

/// diag(p); `dim` = 0 means p.size().
SingleModeDensityMatrix diagonal_density_matrix(const PhotonNumberDistribution& p,
                                                std::size_t dim = 0);

/// exp[theta (a^dag b - a b^dag)] on the truncated space. Exact within every
/// total-photon-number sector that fits entirely inside the truncation.
ComplexMatrix bs_unitary(double theta, std::size_t dim_a, std::size_t dim_b);

/// exp[lambda (a b - a^dag b^dag)] on the truncated space. The columns
/// |m, 0>, m < retained (default dim_a / 2), are checked against leakage into
/// the outermost shell: max |B^dag B - I| over the interior rows must stay
/// below 1e-8, otherwise TruncationError.
ComplexMatrix pdc_unitary(double lambda, std::size_t dim_a, std::size_t dim_b,
                          std::size_t retained = 0);

/// rho (x) |0><0|
TwoModeDensityMatrix embed_with_vacuum(const SingleModeDensityMatrix& rho,
                                       std::size_t dim_a, std::size_t dim_b);

/// U joint U^dag
TwoModeDensityMatrix evolve(const ComplexMatrix& unitary, const TwoModeDensityMatrix& joint);

struct PostSelected {
  SingleModeDensityMatrix rho_out;
  double probability = 0.0;
};

/// Tr_b[M_k joint] with M_k = sum_{l>=k} Upsilon_l |l><l| (l < dim_b).
PostSelected post_select(const TwoModeDensityMatrix& joint, const DetectorModel& d);

/// Beam splitter with the ancilla in vacuum, both modes sized rho.dim() (exact
/// by photon-number conservation).
PostSelected oracle_subtract(const SingleModeDensityMatrix& rho,
                             const BeamSplitterParams& bs, const DetectorModel& d);

/// Down-conversion with the idler in vacuum. The idler cutoff H is the
/// smallest for which the idler-number tail of the highest input level stays
/// below 1e-13 (plus a margin); the signal gets rho.dim() + H levels.
PostSelected oracle_add(const SingleModeDensityMatrix& rho, const PdcParams& pdc,
                        const DetectorModel& d);

}  // namespace condphoton
