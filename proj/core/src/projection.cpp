#include "cliquemerge/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cliquemerge/errors.hpp"

namespace cliquemerge {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) sum += a(i, j) * a(i, j);
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& m, double relative_tolerance,
                            int max_sweeps) {
  if (m.rows() != m.cols()) throw InputError("jacobi_eigen: matrix is not square");
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd a = m.selfadjointView<Eigen::Lower>();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  SymmetricEigen out;
  const double initial = off_diagonal_norm(a);
  const double target = relative_tolerance * initial;
  double off = initial;

  // Round-robin pairing: each round holds n/2 disjoint pairs, every pair
  // appears once per sweep. Disjoint rotations commute, so a round is
  // applied as one column pass and one row pass with contiguous access.
  const Eigen::Index players = n + (n % 2);
  std::vector<Eigen::Index> ring(static_cast<std::size_t>(players));
  std::iota(ring.begin(), ring.end(), Eigen::Index{0});
  struct Rotation {
    Eigen::Index p, q;
    double c, s, t, app, aqq, apq;
  };
  std::vector<Rotation> round;
  round.reserve(static_cast<std::size_t>(players / 2));

  while (off > target && off > 0.0 && out.sweeps < max_sweeps) {
    ++out.sweeps;
    for (Eigen::Index r = 0; r + 1 < players; ++r) {
      round.clear();
      for (Eigen::Index i = 0; i < players / 2; ++i) {
        Eigen::Index p = ring[static_cast<std::size_t>(i)];
        Eigen::Index q = ring[static_cast<std::size_t>(players - 1 - i)];
        if (p >= n || q >= n) continue;
        if (p > q) std::swap(p, q);
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        round.push_back({p, q, c, t * c, t, a(p, p), a(q, q), apq});
      }
      std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
      if (round.empty()) continue;

      for (const auto& rot : round) {
        double* cp = a.col(rot.p).data();
        double* cq = a.col(rot.q).data();
        double* vp = v.col(rot.p).data();
        double* vq = v.col(rot.q).data();
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = cp[k];
          const double akq = cq[k];
          cp[k] = rot.c * akp - rot.s * akq;
          cq[k] = rot.s * akp + rot.c * akq;
          const double vkp = vp[k];
          const double vkq = vq[k];
          vp[k] = rot.c * vkp - rot.s * vkq;
          vq[k] = rot.s * vkp + rot.c * vkq;
        }
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        double* col = a.col(k).data();
        for (const auto& rot : round) {
          const double x = col[rot.p];
          const double y = col[rot.q];
          col[rot.p] = rot.c * x - rot.s * y;
          col[rot.q] = rot.s * x + rot.c * y;
        }
      }
      // Closed-form 2x2 blocks; no other rotation of the round touches them.
      for (const auto& rot : round) {
        a(rot.p, rot.p) = rot.app - rot.t * rot.apq;
        a(rot.q, rot.q) = rot.aqq + rot.t * rot.apq;
        a(rot.p, rot.q) = 0.0;
        a(rot.q, rot.p) = 0.0;
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::sort(perm.begin(), perm.end(),
            [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = perm[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("psd_project: matrix is not square");
  if (!m.allFinite()) throw InputError("psd_project: matrix has non-finite entries");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  const SymmetricEigen eig = jacobi_eigen(sym);
  const Eigen::VectorXd clamped = eig.values.cwiseMax(0.0);
  Eigen::MatrixXd out = eig.vectors * clamped.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace cliquemerge
