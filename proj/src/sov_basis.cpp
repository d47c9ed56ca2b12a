#include "sovsg/sov_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sovsg/errors.hpp"
#include "sovsg/linalg.hpp"
#include "sovsg/yang_baxter.hpp"

namespace sovsg {

Eigen::Index label_index(const Label& h, int p) {
  Eigen::Index i = 0;
  for (const int k : h) i = i * p + k;
  return i;
}

Label index_label(Eigen::Index i, int n_vars, int p) {
  Label h(static_cast<std::size_t>(n_vars));
  for (int n = n_vars - 1; n >= 0; --n) {
    h[n] = static_cast<int>(i % p);
    i /= p;
  }
  return h;
}

Complex vandermonde_factor(const AverageData& avg, const Label& h) {
  Complex v{1.0, 0.0};
  for (int a = 0; a < avg.n_vars(); ++a)
    for (int b = 0; b < a; ++b) {
      const Complex ya = avg.grid(a, h[a]);
      const Complex yb = avg.grid(b, h[b]);
      v *= ya / yb - yb / ya;
    }
  return v;
}

Complex q_product(const QFunction& q, const Label& h, bool negated) {
  Complex acc{1.0, 0.0};
  for (std::size_t n = 0; n < h.size(); ++n)
    acc *= negated ? q.at_neg(static_cast<int>(n), h[n]) : q.at(static_cast<int>(n), h[n]);
  return acc;
}

std::vector<Complex> sample_off_grid(std::mt19937_64& rng, std::size_t count, const AverageData& avg,
                                     double margin) {
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const Complex y : avg.y0) {
    rmin = std::min(rmin, std::abs(y));
    rmax = std::max(rmax, std::abs(y));
  }
  if (avg.y0.empty()) rmin = rmax = 1.0;
  std::vector<Complex> out;
  while (out.size() < count) {
    const Complex z = sample_annulus(rng, 1, 0.5 * rmin, 1.5 * rmax).front();
    bool ok = true;
    for (Eigen::Index n = 0; n < avg.grid.rows() && ok; ++n)
      for (Eigen::Index k = 0; k < avg.grid.cols() && ok; ++k) {
        const Complex g = avg.grid(n, k);
        ok = std::abs(z - g) > margin * std::abs(g) && std::abs(z + g) > margin * std::abs(g);
      }
    if (ok) out.push_back(z);
  }
  return out;
}

double frame_simultaneity(const SOVFrame& frame, const ModelParams& params,
                          std::span<const Complex> points) {
  double worst = 0.0;
  for (const Complex l : points) {
    const Matrix b = monodromy(params, l).B;
    const double bn = b.norm();
    const Matrix bw = b * frame.right;
    for (Eigen::Index j = 0; j < frame.right.cols(); ++j) {
      const Complex beta = (frame.right.col(j).adjoint() * bw.col(j)).value() / frame.right.col(j).squaredNorm();
      worst = std::max(worst, (bw.col(j) - beta * frame.right.col(j)).norm() / (bn * frame.right.col(j).norm()));
    }
  }
  return worst;
}

SOVFrame diagonalize_b_family(const ModelParams& params, const AverageData& avg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SOVFrame frame;
  frame.samples = sample_off_grid(rng, static_cast<std::size_t>(params.n_sites) + 1, avg);

  std::vector<Matrix> family;
  for (const Complex l : frame.samples) family.push_back(monodromy(params, l).B);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (commutator_residual(family[i], family[j]) > params.tol["commute"])
        throw NumericalError("diagonalize_b_family: B family does not commute at the samples");

  const JointEigenbasis jb = joint_eigenbasis(family, rng(), params.tol["collision"]);
  frame.right = jb.vectors;
  frame.left = jb.inverse;
  frame.condition = jb.condition;
  frame.attempts = jb.attempts;
  frame.scales = Vector::Ones(jb.vectors.cols());
  for (const Matrix& b : family) {
    const double bn = b.norm();
    const Matrix bw = b * frame.right;
    for (Eigen::Index j = 0; j < bw.cols(); ++j) {
      const Complex beta = (frame.left.row(j) * bw.col(j)).value();
      frame.simultaneity_residual =
          std::max(frame.simultaneity_residual, (bw.col(j) - beta * frame.right.col(j)).norm() / bn);
    }
  }
  if (frame.simultaneity_residual > params.tol["simultaneous"])
    throw NumericalError("diagonalize_b_family: columns are not simultaneous eigenvectors of the B family");

  const Matrix pairing = frame.left * frame.right;
  frame.biorthogonality = (pairing - Matrix::Identity(pairing.rows(), pairing.cols())).cwiseAbs().maxCoeff();
  return frame;
}

SOVFrame label_vectors(SOVFrame frame, const AverageData& avg, const ModelParams& params) {
  const int n_vars = avg.n_vars();
  const int p = avg.p();
  const Eigen::Index dim = frame.right.cols();

  // residual[n][k](j) = ||B(y_n^k) w_j|| / (||B|| ||w_j||)
  std::vector<std::vector<Eigen::VectorXd>> res(static_cast<std::size_t>(n_vars));
  for (int n = 0; n < n_vars; ++n)
    for (int k = 0; k < p; ++k) {
      const Matrix b = monodromy(params, avg.grid(n, k)).B;
      const Matrix bw = b * frame.right;
      Eigen::VectorXd r(dim);
      for (Eigen::Index j = 0; j < dim; ++j) r(j) = bw.col(j).norm() / (b.norm() * frame.right.col(j).norm());
      res[n].push_back(std::move(r));
    }

  const double tol = params.tol["label"];
  std::vector<Label> labels(static_cast<std::size_t>(dim), Label(static_cast<std::size_t>(n_vars)));
  frame.label_residual = 0.0;
  frame.label_margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < dim; ++j)
    for (int n = 0; n < n_vars; ++n) {
      int hits = 0;
      for (int k = 0; k < p; ++k) {
        const double r = res[n][k](j);
        if (r <= tol) {
          ++hits;
          labels[j][n] = k;
          frame.label_residual = std::max(frame.label_residual, r);
        } else {
          frame.label_margin = std::min(frame.label_margin, r);
        }
      }
      if (hits != 1)
        throw DegenerateError("label_vectors: vector " + std::to_string(j) + " is annihilated by " +
                              std::to_string(hits) + " grid points of variable " + std::to_string(n + 1));
    }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim), -1);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Eigen::Index i = label_index(labels[j], p);
    if (order[i] != -1) throw DegenerateError("label_vectors: labelling is not a bijection");
    order[i] = j;
  }

  SOVFrame out = frame;
  for (Eigen::Index i = 0; i < dim; ++i) {
    out.right.col(i) = frame.right.col(order[i]);
    out.left.row(i) = frame.left.row(order[i]);
    out.scales(i) = frame.scales(order[i]);
  }
  out.labels.clear();
  for (Eigen::Index i = 0; i < dim; ++i) out.labels.push_back(index_label(i, n_vars, p));
  out.labeled = true;
  return out;
}

SOVFrame apply_measure_normalization(SOVFrame frame, const AverageData& avg, const ModelParams& params) {
  if (!frame.labeled) throw ConfigError("apply_measure_normalization: frame is not labelled");
  const Eigen::Index dim = frame.right.cols();
  frame.measure.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex v = vandermonde_factor(avg, frame.labels[i]);
    if (std::abs(v) < params.tol["genericity"])
      throw DegenerateError("apply_measure_normalization: vanishing measure denominator");
    frame.measure(i) = 1.0 / v;
    const Complex current = (frame.left.row(i) * frame.right.col(i)).value();
    frame.left.row(i) *= frame.measure(i) / current;
  }

  const Matrix pairing = frame.left * frame.right;
  frame.measure_residual = 0.0;
  frame.biorthogonality = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    frame.measure_residual = std::max(frame.measure_residual, std::abs(pairing(i, i) - frame.measure(i)) / std::abs(frame.measure(i)));
    for (Eigen::Index j = 0; j < dim; ++j)
      if (i != j)
        frame.biorthogonality = std::max(frame.biorthogonality, std::abs(pairing(i, j)) / std::abs(frame.measure(i)));
  }
  frame.normalized = true;
  return frame;
}

namespace {

void normalize_scales(SOVFrame& frame) {
  // One global constant: make the largest scale 1 in modulus and phase.
  Eigen::Index imax = 0;
  frame.scales.cwiseAbs().maxCoeff(&imax);
  const Complex g = frame.scales(imax);
  frame.scales /= g;
  frame.right /= g;
  frame.left *= g;
  frame.calibrated = true;
}

}  // namespace

SOVFrame calibrate_scales(SOVFrame frame, const QFunction& reference,
                          const Vector& oracle_vector) {
  if (!frame.normalized) throw ConfigError("calibrate_scales: frame has no measure normalization");
  const Eigen::Index dim = frame.right.cols();
  // Components of the oracle vector on the current right basis.
  const Vector comps = (frame.left * oracle_vector).cwiseQuotient(frame.measure);

  const double floor = 1e-13 * comps.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex target = q_product(reference, frame.labels[i]) / frame.measure(i);
    if (std::abs(target) == 0.0)
      throw NumericalError("calibrate_scales: reference Q vanishes on the grid, pick another reference");
    if (std::abs(comps(i)) < floor)
      throw NumericalError("calibrate_scales: oracle vector has a vanishing SOV component");
    const Complex s = comps(i) / target;
    frame.right.col(i) *= s;
    frame.left.row(i) /= s;
    frame.scales(i) *= s;
  }
  normalize_scales(frame);
  return frame;
}

SOVFrame calibrate_from_transfer(SOVFrame frame, const AverageData& avg, const ModelParams& params,
                                 const BaxterCoeffs& coeffs) {
  if (!frame.labeled || !frame.normalized)
    throw ConfigError("calibrate_from_transfer: frame must be labelled and normalized");
  const int n = avg.n_vars();
  const int p = avg.p();
  const Eigen::Index dim = frame.right.cols();
  const Vector v = frame.measure.cwiseInverse();

  // lower(h, a) = <y^h|T(y_a^{h_a})|y^{h-e_a}> V(h-e_a), upper likewise for h+e_a.
  Matrix lower(dim, n), upper(dim, n);
  auto neighbour = [&](Eigen::Index h, int a, int step) {
    Label l = frame.labels[h];
    l[a] = (l[a] + step + p) % p;
    return label_index(l, p);
  };
  double pattern = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int k = 0; k < p; ++k) {
      const Matrix tr = transfer(params, avg.y(a, k)) * frame.right;
      for (Eigen::Index h = 0; h < dim; ++h) {
        if (frame.labels[h][a] != k) continue;
        const RowVector row = (frame.left.row(h) * tr).cwiseProduct(v.transpose());
        const Eigen::Index lo = neighbour(h, a, -1), hi = neighbour(h, a, 1);
        lower(h, a) = row(lo);
        upper(h, a) = row(hi);
        const double scale = std::max(std::abs(row(lo)), std::abs(row(hi)));
        for (Eigen::Index j = 0; j < dim; ++j)
          if (j != lo && j != hi) pattern = std::max(pattern, std::abs(row(j)) / scale);
      }
    }
  }

  // Rescaling column i by s_i and row i by 1/s_i maps M(h, k) to M(h, k) s_k / s_h.
  // Label order visits h - e_a before h, so a spanning tree is one pass.
  Vector s = Vector::Ones(dim);
  for (Eigen::Index h = 1; h < dim; ++h) {
    const Label& l = frame.labels[h];
    int a = n - 1;
    while (l[a] == 0) --a;
    const Eigen::Index parent = neighbour(h, a, -1);
    const Complex ca = coeffs.a(avg.y(a, l[a]));
    const Complex cd = coeffs.d(avg.y(a, l[a] - 1));
    if (std::abs(ca) >= std::abs(cd)) {
      if (std::abs(ca) == 0.0) throw DegenerateError("calibrate_from_transfer: a and d vanish on the grid");
      s(h) = lower(h, a) * s(parent) / ca;
    } else {
      s(h) = cd * s(parent) / upper(parent, a);
    }
    if (!std::isfinite(std::abs(s(h))) || std::abs(s(h)) == 0.0)
      throw NumericalError("calibrate_from_transfer: degenerate scale");
  }

  double closure = 0.0;
  for (Eigen::Index h = 0; h < dim; ++h) {
    for (int a = 0; a < n; ++a) {
      const Complex y = avg.y(a, frame.labels[h][a]);
      const Complex ca = coeffs.a(y), cd = coeffs.d(y);
      const double ref = std::abs(ca) + std::abs(cd);
      const Complex lo = lower(h, a) * s(neighbour(h, a, -1)) / s(h);
      const Complex hi = upper(h, a) * s(neighbour(h, a, 1)) / s(h);
      closure = std::max({closure, std::abs(lo - ca) / ref, std::abs(hi - cd) / ref});
    }
  }

  for (Eigen::Index i = 0; i < dim; ++i) {
    frame.right.col(i) *= s(i);
    frame.left.row(i) /= s(i);
    frame.scales(i) *= s(i);
  }
  frame.transfer_closure = closure;
  frame.transfer_pattern = pattern;
  normalize_scales(frame);
  return frame;
}

}  // namespace sovsg
