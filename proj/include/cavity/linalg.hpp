#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "errors.hpp"

namespace cavity {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenOptions {
  /// Matrices up to this size go to the dense symmetric solver.
  int dense_limit = 800;
  /// Relative residual ||Ax - theta x|| / ||A||_inf for convergence.
  double tolerance = 1e-12;
  int max_iterations = 2000;
  std::uint64_t seed = 0x5EED;
};

struct EigenResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors; ///< orthonormal columns
  int iterations = 0;
};

inline double inf_norm(const SparseMatrix &a) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) rows[it.row()] += std::abs(it.value());
  return a.rows() > 0 ? rows.maxCoeff() : 0.0;
}

/// Smallest `count` eigenpairs of a symmetric positive semidefinite matrix.
/// Dense matrices use a full symmetric decomposition; large ones use block
/// shift-invert subspace iteration with Rayleigh-Ritz projection.
inline EigenResult smallest_eigenpairs(const SparseMatrix &a, int count, const EigenOptions &opt = {}) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw SolverError("smallest_eigenpairs: matrix is not square");
  if (n == 0) throw SolverError("smallest_eigenpairs: empty matrix");
  count = std::min(count, n);
  if (count < 1) throw SolverError("smallest_eigenpairs: count must be >= 1");
  const double scale = std::max(inf_norm(a), 1e-300);

  EigenResult out;
  const int block = std::min(n, 2 * count + 10);
  if (n <= opt.dense_limit || block * 3 > n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(a)};
    if (es.info() != Eigen::Success) throw SolverError("smallest_eigenpairs: dense solver failed");
    out.values = es.eigenvalues().head(count);
    out.vectors = es.eigenvectors().leftCols(count);
  } else {
    // Shift below zero so that A - sigma I is positive definite even for a
    // singular semidefinite A.
    const double sigma = -std::max(1.0, 1e-6 * scale);
    SparseMatrix shifted = a;
    for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) -= sigma;
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) throw SolverError("smallest_eigenpairs: factorization failed");
    if ((ldlt.vectorD().array() <= 0.0).any()) {
      throw SolverError("smallest_eigenpairs: matrix is not positive semidefinite");
    }

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd x(n, block);
    for (int j = 0; j < block; ++j)
      for (int i = 0; i < n; ++i) x(i, j) = gauss(rng);

    bool converged = false;
    for (int it = 1; it <= opt.max_iterations; ++it) {
      Eigen::MatrixXd y = ldlt.solve(x);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
      Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, block);
      Eigen::MatrixXd aq = a * q;
      Eigen::MatrixXd h = q.transpose() * aq;
      h = 0.5 * (h + h.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      x = q * es.eigenvectors();
      const Eigen::MatrixXd ax = aq * es.eigenvectors();
      double worst = 0.0;
      for (int j = 0; j < count; ++j) {
        const double r = (ax.col(j) - es.eigenvalues()[j] * x.col(j)).norm();
        worst = std::max(worst, r / scale);
      }
      out.iterations = it;
      if (worst <= opt.tolerance) {
        out.values = es.eigenvalues().head(count);
        out.vectors = x.leftCols(count);
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw SolverError("smallest_eigenpairs: no convergence after " + std::to_string(opt.max_iterations) +
                        " iterations (n=" + std::to_string(n) + ")");
    }
  }
  if (out.values.size() > 0 && out.values[0] < -1e-8 * scale) {
    throw SolverError("smallest_eigenpairs: negative eigenvalue, matrix is indefinite");
  }
  return out;
}

/// Makes eigenvectors within each cluster of (relatively) equal eigenvalues
/// reproducible: a greedy pivoting picks rows in index order,
/// the block is made the identity on those rows, then orthonormalized in order
/// with a positive entry on each pivot row.
inline void canonicalize_clusters(const Eigen::VectorXd &values, Eigen::MatrixXd &vectors, double rel_tol) {
  const int count = static_cast<int>(values.size());
  int start = 0;
  while (start < count) {
    int end = start + 1;
    while (end < count &&
           std::abs(values[end] - values[start]) <= rel_tol * std::max(1.0, std::abs(values[start])))
      ++end;
    const int c = end - start;
    Eigen::MatrixXd v = vectors.middleCols(start, c);
    // Greedy pivots: at each step, the lowest row index whose component
    // outside the span of the rows already chosen is at least half the largest.
    std::vector<int> piv;
    Eigen::MatrixXd basis(c, 0);
    for (int j = 0; j < c; ++j) {
      Eigen::MatrixXd resid = v;
      if (basis.cols() > 0) resid -= (v * basis) * basis.transpose();
      const Eigen::VectorXd norms = resid.rowwise().norm();
      const double top = norms.maxCoeff();
      int pick = 0;
      while (norms[pick] < 0.5 * top) ++pick;
      piv.push_back(pick);
      Eigen::VectorXd dir = resid.row(pick).transpose() / norms[pick];
      basis.conservativeResize(c, basis.cols() + 1);
      basis.col(basis.cols() - 1) = dir;
    }
    if (c > 1) {
      Eigen::MatrixXd sub(c, c);
      for (int j = 0; j < c; ++j) sub.row(j) = v.row(piv[static_cast<std::size_t>(j)]);
      v = v * sub.inverse();
      for (int j = 0; j < c; ++j) {
        for (int i = 0; i < j; ++i) v.col(j) -= v.col(i).dot(v.col(j)) * v.col(i);
        v.col(j).normalize();
      }
    }
    for (int j = 0; j < c; ++j) {
      if (v(piv[static_cast<std::size_t>(j)], j) < 0.0) v.col(j) = -v.col(j);
    }
    vectors.middleCols(start, c) = v;
    start = end;
  }
}

} // namespace cavity
