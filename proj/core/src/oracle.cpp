#include "condphoton/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numeric>

#include "condphoton/errors.hpp"
#include "condphoton/numerics.hpp"

namespace condphoton {
namespace {

using RealMatrix = Eigen::MatrixXd;
using cd = std::complex<double>;

constexpr double kLeakageTolerance = 1e-8;
constexpr double kIdlerTail = 1e-13;
constexpr std::size_t kIdlerMargin = 2;

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// exp(G) for a real antisymmetric G, one connected block at a time:
// H = i G is Hermitian, exp(G) = V exp(-i D) V^dag.
ComplexMatrix exponentiate_antisymmetric(const RealMatrix& g) {
  const auto n = static_cast<std::size_t>(g.rows());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g(i, j) != 0.0 || g(j, i) != 0.0) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }
  std::vector<std::vector<std::size_t>> blocks(n);
  for (std::size_t i = 0; i < n; ++i) blocks[find_root(parent, i)].push_back(i);

  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    const auto m = static_cast<Eigen::Index>(block.size());
    if (m == 1) {
      u(block[0], block[0]) = 1.0;
      continue;
    }
    ComplexMatrix h(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) h(i, j) = cd(0.0, g(block[i], block[j]));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    const auto& v = solver.eigenvectors();
    Eigen::VectorXcd phases(m);
    for (Eigen::Index i = 0; i < m; ++i) phases(i) = std::exp(cd(0.0, -solver.eigenvalues()(i)));
    const ComplexMatrix ub = v * phases.asDiagonal() * v.adjoint();
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) u(block[i], block[j]) = ub(i, j);
    }
  }
  return u;
}

void require_dims(std::size_t dim_a, std::size_t dim_b) {
  if (dim_a < 2 || dim_b < 2) throw DomainError("mode dimensions must be >= 2");
}

}  // namespace

std::vector<double> SingleModeDensityMatrix::diagonal() const {
  std::vector<double> d(dim());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = entries(i, i).real();
  return d;
}

SingleModeDensityMatrix coherent_density_matrix(double n0, std::size_t dim) {
  if (!(n0 >= 0.0) || !std::isfinite(n0)) throw DomainError("n0 must be finite and >= 0");
  if (dim == 0) throw DomainError("dimension must be >= 1");
  Eigen::VectorXd amp = Eigen::VectorXd::Zero(dim);
  if (n0 == 0.0) {
    amp(0) = 1.0;
  } else {
    const double log_n0 = std::log(n0);
    for (std::size_t m = 0; m < dim; ++m) {
      amp(m) = std::exp(0.5 * (-n0 + m * log_n0 - log_factorial(m)));
    }
  }
  const double deficit = 1.0 - amp.squaredNorm();
  if (deficit > 1e-8) {
    throw TruncationError("coherent_density_matrix: dimension too small for n0", deficit);
  }
  return {(amp * amp.transpose()).cast<cd>()};
}

SingleModeDensityMatrix diagonal_density_matrix(const PhotonNumberDistribution& p,
                                                std::size_t dim) {
  if (dim == 0) dim = p.size();
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::size_t n = 0; n < dim; ++n) rho(n, n) = p[n];
  return {std::move(rho)};
}

ComplexMatrix bs_unitary(double theta, std::size_t dim_a, std::size_t dim_b) {
  require_dims(dim_a, dim_b);
  const std::size_t n = dim_a * dim_b;
  RealMatrix g = RealMatrix::Zero(n, n);
  // theta a^dag b |i, j> = theta sqrt((i+1) j) |i+1, j-1>, and its negative transpose.
  for (std::size_t i = 0; i + 1 < dim_a; ++i) {
    for (std::size_t j = 1; j < dim_b; ++j) {
      const double c = theta * std::sqrt(static_cast<double>((i + 1) * j));
      g((i + 1) * dim_b + (j - 1), i * dim_b + j) += c;
      g(i * dim_b + j, (i + 1) * dim_b + (j - 1)) -= c;
    }
  }
  return exponentiate_antisymmetric(g);
}

ComplexMatrix pdc_unitary(double lambda, std::size_t dim_a, std::size_t dim_b,
                          std::size_t retained) {
  require_dims(dim_a, dim_b);
  const std::size_t n = dim_a * dim_b;
  RealMatrix g = RealMatrix::Zero(n, n);
  // lambda a b |i+1, j+1> = lambda sqrt((i+1)(j+1)) |i, j>; minus a^dag b^dag.
  for (std::size_t i = 0; i + 1 < dim_a; ++i) {
    for (std::size_t j = 0; j + 1 < dim_b; ++j) {
      const double c = lambda * std::sqrt(static_cast<double>((i + 1) * (j + 1)));
      g(i * dim_b + j, (i + 1) * dim_b + (j + 1)) += c;
      g((i + 1) * dim_b + (j + 1), i * dim_b + j) -= c;
    }
  }
  ComplexMatrix u = exponentiate_antisymmetric(g);

  if (retained == 0) retained = dim_a / 2;
  retained = std::min(retained, dim_a);
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i + 1 < dim_a; ++i) {
    for (std::size_t j = 0; j + 1 < dim_b; ++j) rows.push_back(i * dim_b + j);
  }
  ComplexMatrix b(rows.size(), retained);
  for (std::size_t c = 0; c < retained; ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) b(r, c) = u(rows[r], c * dim_b);
  }
  const ComplexMatrix gram = b.adjoint() * b - ComplexMatrix::Identity(retained, retained);
  const double deviation = gram.cwiseAbs().maxCoeff();
  if (!(deviation <= kLeakageTolerance)) {
    throw TruncationError("pdc_unitary: truncation leaks out of the retained block",
                          deviation);
  }
  return u;
}

TwoModeDensityMatrix embed_with_vacuum(const SingleModeDensityMatrix& rho,
                                       std::size_t dim_a, std::size_t dim_b) {
  if (rho.dim() > dim_a) throw DomainError("state does not fit in the signal mode");
  TwoModeDensityMatrix joint{dim_a, dim_b, ComplexMatrix::Zero(dim_a * dim_b, dim_a * dim_b)};
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      joint.entries(joint.index(i, 0), joint.index(j, 0)) = rho.entries(i, j);
    }
  }
  return joint;
}

TwoModeDensityMatrix evolve(const ComplexMatrix& unitary, const TwoModeDensityMatrix& joint) {
  return {joint.dim_a, joint.dim_b, unitary * joint.entries * unitary.adjoint()};
}

PostSelected post_select(const TwoModeDensityMatrix& joint, const DetectorModel& d) {
  ComplexMatrix out = ComplexMatrix::Zero(joint.dim_a, joint.dim_a);
  for (std::size_t l = 0; l < joint.dim_b; ++l) {
    if (d.upsilon(static_cast<unsigned>(l)) == 0) continue;
    for (std::size_t i = 0; i < joint.dim_a; ++i) {
      for (std::size_t j = 0; j < joint.dim_a; ++j) {
        out(i, j) += joint.entries(joint.index(i, l), joint.index(j, l));
      }
    }
  }
  const double p = out.trace().real();
  return {{std::move(out)}, p};
}

namespace {

// U rho_embedded U^dag using only the columns of U that touch |i, 0>.
TwoModeDensityMatrix evolve_from_vacuum(const ComplexMatrix& u,
                                        const SingleModeDensityMatrix& rho,
                                        std::size_t dim_a, std::size_t dim_b) {
  ComplexMatrix w(u.rows(), rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) w.col(i) = u.col(i * dim_b);
  return {dim_a, dim_b, w * rho.entries * w.adjoint()};
}

}  // namespace

PostSelected oracle_subtract(const SingleModeDensityMatrix& rho,
                             const BeamSplitterParams& bs, const DetectorModel& d) {
  const std::size_t dim = std::max<std::size_t>(rho.dim(), 2);
  const ComplexMatrix u = bs_unitary(bs.theta(), dim, dim);
  return post_select(evolve_from_vacuum(u, rho, dim, dim), d);
}

PostSelected oracle_add(const SingleModeDensityMatrix& rho, const PdcParams& pdc,
                        const DetectorModel& d) {
  // Idler count l for input m is negative-binomial: C(m+l, l) t^{m+1} (rt)^l.
  const std::size_t m = rho.dim() - 1;
  const double log_q = pdc.log_r() + pdc.log_t();
  const double log_head = (m + 1.0) * pdc.log_t();
  std::size_t h = 1;
  for (;; ++h) {
    double tail = 0.0;
    for (std::size_t l = h + 1;; ++l) {
      const double term = std::exp(log_binomial(m + l, l).log_magnitude + log_head + l * log_q);
      tail += term;
      if (term < 1e-30 || l > h + 10000) break;
    }
    if (tail < kIdlerTail) break;
  }
  h += kIdlerMargin;
  const std::size_t dim_a = rho.dim() + h;
  const std::size_t dim_b = h + 1;
  const ComplexMatrix u = pdc_unitary(pdc.lambda(), dim_a, dim_b, rho.dim());
  return post_select(evolve_from_vacuum(u, rho, dim_a, dim_b), d);
}

}  // namespace condphoton
