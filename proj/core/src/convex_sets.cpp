#include "bregproj/convex_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bregproj/error.hpp"

namespace bregproj {

std::string to_string(SetKind kind) {
  switch (kind) {
    case SetKind::hyperplane: return "hyperplane";
    case SetKind::halfspace: return "halfspace";
    case SetKind::affine: return "affine";
    case SetKind::box: return "box";
    case SetKind::simplex: return "simplex";
    case SetKind::norm_ball: return "ball";
    case SetKind::cone: return "cone";
    case SetKind::psd_trace_slice: return "psd_trace_slice";
    case SetKind::intersection: return "intersection";
  }
  return "?";
}

namespace {

// Orthonormal basis of the orthogonal complement of range(G).
Mat complement_basis(const Mat& G) {
  const Eigen::Index d = G.rows();
  if (G.cols() == 0) return Mat::Identity(d, d);
  Eigen::JacobiSVD<Mat> svd(G, Eigen::ComputeFullU);
  const double tol = 1e-10 * std::max(1.0, svd.singularValues().maxCoeff());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++r;
  return svd.matrixU().rightCols(d - r);
}

Mat range_basis(const Mat& G) {
  Eigen::JacobiSVD<Mat> svd(G, Eigen::ComputeThinU);
  const double tol = 1e-10 * std::max(1.0, svd.singularValues().size() ? svd.singularValues().maxCoeff() : 1.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::Index numeric_rank(const Mat& M) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(M);
  const double tol = 1e-10 * std::max(1.0, svd.singularValues().maxCoeff());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++r;
  return r;
}

// min ||G l - x|| subject to l >= 0 (Lawson-Hanson).
Vec nnls(const Mat& G, const Vec& x) {
  const Eigen::Index k = G.cols();
  Vec lam = Vec::Zero(k);
  std::vector<bool> passive(k, false);
  const double tol = 1e-13 * std::max(1.0, G.norm() * x.norm());
  for (int outer = 0; outer < 3 * k + 10; ++outer) {
    Vec w = G.transpose() * (x - G * lam);
    Eigen::Index j = -1;
    double best = tol;
    for (Eigen::Index i = 0; i < k; ++i)
      if (!passive[i] && w[i] > best) {
        best = w[i];
        j = i;
      }
    if (j < 0) break;
    passive[j] = true;
    for (int inner = 0; inner < 3 * k + 10; ++inner) {
      std::vector<Eigen::Index> P;
      for (Eigen::Index i = 0; i < k; ++i)
        if (passive[i]) P.push_back(i);
      Mat GP(G.rows(), P.size());
      for (std::size_t c = 0; c < P.size(); ++c) GP.col(c) = G.col(P[c]);
      Vec sP = GP.colPivHouseholderQr().solve(x);
      bool ok = true;
      for (double v : sP)
        if (v <= 0) ok = false;
      if (ok) {
        lam.setZero();
        for (std::size_t c = 0; c < P.size(); ++c) lam[P[c]] = sP[c];
        break;
      }
      double alpha = 1.0;
      for (std::size_t c = 0; c < P.size(); ++c)
        if (sP[c] <= 0) alpha = std::min(alpha, lam[P[c]] / (lam[P[c]] - sP[c]));
      for (std::size_t c = 0; c < P.size(); ++c) lam[P[c]] += alpha * (sP[c] - lam[P[c]]);
      for (std::size_t c = 0; c < P.size(); ++c)
        if (lam[P[c]] <= 1e-15) {
          lam[P[c]] = 0;
          passive[P[c]] = false;
        }
    }
  }
  return lam;
}

Vec project_soc(const Vec& x) {
  const Eigen::Index d = x.size();
  const Vec u = x.head(d - 1);
  const double t = x[d - 1];
  const double s = u.norm();
  if (s <= t) return x;
  if (s <= -t) return Vec::Zero(d);
  Vec out(d);
  const double c = 0.5 * (s + t);
  out.head(d - 1) = c * u / s;
  out[d - 1] = c;
  return out;
}

void require_dim(const ConvexSet& K, const Vec& x) {
  if (x.size() != K.dim) throw ShapeError("convex set: point dimension does not match set");
}

}  // namespace

ConvexSet ConvexSet::hyperplane(Vec a, double b) {
  ConvexSet K;
  K.kind = SetKind::hyperplane;
  K.dim = static_cast<int>(a.size());
  K.a = std::move(a);
  K.b = b;
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::halfspace(Vec a, double b) {
  ConvexSet K = hyperplane(std::move(a), b);
  K.kind = SetKind::halfspace;
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::affine(Mat A, Vec rhs) {
  ConvexSet K;
  K.kind = SetKind::affine;
  K.dim = static_cast<int>(A.cols());
  K.A = std::move(A);
  K.rhs = std::move(rhs);
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::box(Vec lower, Vec upper) {
  ConvexSet K;
  K.kind = SetKind::box;
  K.dim = static_cast<int>(lower.size());
  K.lower = std::move(lower);
  K.upper = std::move(upper);
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::simplex(int dim, double total) {
  ConvexSet K;
  K.kind = SetKind::simplex;
  K.dim = dim;
  K.total = total;
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::ball(Vec center, double radius) {
  ConvexSet K;
  K.kind = SetKind::norm_ball;
  K.dim = static_cast<int>(center.size());
  K.center = std::move(center);
  K.radius = radius;
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::orthant(int dim, double sign) {
  ConvexSet K;
  K.kind = SetKind::cone;
  K.cone = ConeKind::orthant;
  K.dim = dim;
  K.sign = sign >= 0 ? 1.0 : -1.0;
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::ray(Vec direction) {
  Mat G(direction.size(), 1);
  G.col(0) = direction;
  return generated_cone(std::move(G));
}

ConvexSet ConvexSet::generated_cone(Mat generators) {
  ConvexSet K;
  K.kind = SetKind::cone;
  K.cone = ConeKind::generated;
  K.dim = static_cast<int>(generators.rows());
  K.generators = std::move(generators);
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::facet_cone(Mat normals) {
  ConvexSet K = generated_cone(std::move(normals));
  K.cone = ConeKind::facets;
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::subspace(Mat basis) {
  ConvexSet K;
  K.kind = SetKind::cone;
  K.cone = ConeKind::subspace;
  K.dim = static_cast<int>(basis.rows());
  K.generators = std::move(basis);
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::second_order_cone(int dim, double sign) {
  ConvexSet K;
  K.kind = SetKind::cone;
  K.cone = ConeKind::second_order;
  K.dim = dim;
  K.sign = sign >= 0 ? 1.0 : -1.0;
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::psd_trace_slice(int n, double trace) {
  ConvexSet K;
  K.kind = SetKind::psd_trace_slice;
  K.dim = n * n;
  K.matrix_n = n;
  K.total = trace;
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::intersection(std::vector<ConvexSet> parts) {
  ConvexSet K;
  K.kind = SetKind::intersection;
  if (parts.empty()) throw ValidationError("intersection: needs at least one component");
  K.dim = parts.front().dim;
  K.coordinates = parts.front().coordinates;
  K.parts = std::move(parts);
  K.validate();
  K.witness = default_witness(K);
  return K;
}

ConvexSet ConvexSet::in_dual() const {
  ConvexSet K = *this;
  K.coordinates = Coordinates::dual;
  for (auto& p : K.parts) p.coordinates = Coordinates::dual;
  return K;
}

bool ConvexSet::is_affine() const {
  switch (kind) {
    case SetKind::hyperplane:
    case SetKind::affine: return true;
    case SetKind::cone: return cone == ConeKind::subspace;
    case SetKind::intersection:
      return std::all_of(parts.begin(), parts.end(), [](const ConvexSet& p) { return p.is_affine(); });
    default: return false;
  }
}

std::optional<std::vector<LinearRow>> ConvexSet::linear_rows() const {
  std::vector<LinearRow> rows;
  auto unit = [this](int i, double s) {
    Vec e = Vec::Zero(dim);
    e[i] = s;
    return e;
  };
  switch (kind) {
    case SetKind::hyperplane: rows.push_back({a, b, true}); break;
    case SetKind::halfspace: rows.push_back({a, b, false}); break;
    case SetKind::affine:
      for (Eigen::Index i = 0; i < A.rows(); ++i) rows.push_back({A.row(i).transpose(), rhs[i], true});
      break;
    case SetKind::box:
      for (int i = 0; i < dim; ++i) {
        if (std::isfinite(upper[i])) rows.push_back({unit(i, 1.0), upper[i], false});
        if (std::isfinite(lower[i])) rows.push_back({unit(i, -1.0), -lower[i], false});
      }
      break;
    case SetKind::simplex:
      rows.push_back({Vec::Ones(dim), total, true});
      for (int i = 0; i < dim; ++i) rows.push_back({unit(i, -1.0), 0.0, false});
      break;
    case SetKind::cone:
      switch (cone) {
        case ConeKind::orthant:
          for (int i = 0; i < dim; ++i) rows.push_back({unit(i, -sign), 0.0, false});
          break;
        case ConeKind::generated: {
          Mat N = complement_basis(generators);
          for (Eigen::Index j = 0; j < N.cols(); ++j) rows.push_back({N.col(j), 0.0, true});
          Mat pinv = generators.completeOrthogonalDecomposition().pseudoInverse();
          for (Eigen::Index j = 0; j < pinv.rows(); ++j) rows.push_back({-pinv.row(j).transpose(), 0.0, false});
          break;
        }
        case ConeKind::facets:
          for (Eigen::Index j = 0; j < generators.cols(); ++j) rows.push_back({generators.col(j), 0.0, false});
          break;
        case ConeKind::subspace: {
          Mat N = complement_basis(generators);
          for (Eigen::Index j = 0; j < N.cols(); ++j) rows.push_back({N.col(j), 0.0, true});
          break;
        }
        case ConeKind::second_order: return std::nullopt;
      }
      break;
    case SetKind::intersection:
      for (const auto& p : parts) {
        auto r = p.linear_rows();
        if (!r) return std::nullopt;
        rows.insert(rows.end(), r->begin(), r->end());
      }
      break;
    default: return std::nullopt;
  }
  return rows;
}

void ConvexSet::validate() const {
  if (dim < 1) throw ValidationError("convex set: dimension must be positive");
  switch (kind) {
    case SetKind::hyperplane:
    case SetKind::halfspace:
      if (a.size() != dim) throw ShapeError("hyperplane: normal dimension mismatch");
      if (!a.allFinite() || !std::isfinite(b)) throw ValidationError("hyperplane: NaN or infinite data");
      if (a.norm() == 0.0) throw ValidationError("hyperplane: normal must be nonzero");
      break;
    case SetKind::affine:
      if (A.rows() < 1 || A.rows() != rhs.size()) throw ShapeError("affine: A and rhs sizes disagree");
      if (!A.allFinite() || !rhs.allFinite()) throw ValidationError("affine: NaN or infinite data");
      if (numeric_rank(A) != A.rows()) throw ValidationError("affine: rows of A must be linearly independent");
      break;
    case SetKind::box:
      if (lower.size() != dim || upper.size() != dim) throw ShapeError("box: bound dimension mismatch");
      for (int i = 0; i < dim; ++i)
        if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i])
          throw ValidationError("box: need lower <= upper");
      break;
    case SetKind::simplex:
      if (!(total > 0) || !std::isfinite(total)) throw ValidationError("simplex: total must be positive");
      break;
    case SetKind::norm_ball:
      if (!(radius > 0) || !std::isfinite(radius) || !center.allFinite())
        throw ValidationError("ball: radius must be positive and data finite");
      break;
    case SetKind::cone:
      if (cone == ConeKind::generated || cone == ConeKind::facets || cone == ConeKind::subspace) {
        if (generators.rows() != dim || generators.cols() < 1) throw ShapeError("cone: generator shape mismatch");
        if (!generators.allFinite()) throw ValidationError("cone: NaN or infinite generators");
        if (numeric_rank(generators) != generators.cols())
          throw ValidationError("cone: generators must be linearly independent");
      }
      if (cone == ConeKind::second_order && dim < 2) throw ValidationError("second order cone needs dim >= 2");
      break;
    case SetKind::psd_trace_slice:
      if (matrix_n < 1 || dim != matrix_n * matrix_n) throw ShapeError("psd slice: dimension mismatch");
      if (!(total > 0)) throw ValidationError("psd slice: trace must be positive");
      break;
    case SetKind::intersection:
      for (const auto& p : parts) {
        if (p.dim != dim) throw ShapeError("intersection: component dimensions differ");
        p.validate();
      }
      break;
  }
}

Vec project_simplex(const Vec& x, double s) {
  const Eigen::Index n = x.size();
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) { return x[i] > x[j]; });
  double cum = 0.0, theta = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cum += x[idx[k]];
    const double t = (cum - s) / static_cast<double>(k + 1);
    if (x[idx[k]] - t > 0) theta = t;
  }
  return (x.array() - theta).max(0.0).matrix();
}

Vec euclidean_project_coords(const ConvexSet& K, const Vec& x) {
  require_dim(K, x);
  switch (K.kind) {
    case SetKind::hyperplane: return x - (K.a.dot(x) - K.b) / K.a.squaredNorm() * K.a;
    case SetKind::halfspace: {
      const double r = K.a.dot(x) - K.b;
      return r <= 0 ? x : Vec(x - r / K.a.squaredNorm() * K.a);
    }
    case SetKind::affine: {
      const Mat AAt = K.A * K.A.transpose();
      return x - K.A.transpose() * AAt.ldlt().solve(K.A * x - K.rhs);
    }
    case SetKind::box: return x.cwiseMax(K.lower).cwiseMin(K.upper);
    case SetKind::simplex: return project_simplex(x, K.total);
    case SetKind::norm_ball: {
      const Vec d = x - K.center;
      const double r = d.norm();
      return r <= K.radius ? x : Vec(K.center + K.radius / r * d);
    }
    case SetKind::cone:
      switch (K.cone) {
        case ConeKind::orthant: return K.sign > 0 ? Vec(x.cwiseMax(0.0)) : Vec(x.cwiseMin(0.0));
        case ConeKind::generated: return K.generators * nnls(K.generators, x);
        case ConeKind::facets: return x - K.generators * nnls(K.generators, x);
        case ConeKind::subspace: {
          const Mat Q = range_basis(K.generators);
          return Q * (Q.transpose() * x);
        }
        case ConeKind::second_order: return K.sign * project_soc(K.sign * x);
      }
      break;
    case SetKind::psd_trace_slice: {
      EigenSorted e = eigen_sorted(unflatten_hermitian(x, K.matrix_n));
      const Vec l = project_simplex(e.values, K.total);
      CMat m = e.basis * l.cast<Complex>().asDiagonal() * e.basis.adjoint();
      return flatten_hermitian(0.5 * (m + m.adjoint()));
    }
    case SetKind::intersection: {
      // Dykstra's algorithm
      const std::size_t m = K.parts.size();
      std::vector<Vec> corr(m, Vec::Zero(x.size()));
      Vec cur = x;
      for (int sweep = 0; sweep < 20000; ++sweep) {
        const Vec start = cur;
        for (std::size_t i = 0; i < m; ++i) {
          const Vec v = cur + corr[i];
          const Vec p = euclidean_project_coords(K.parts[i], v);
          corr[i] = v - p;
          cur = p;
        }
        if ((cur - start).norm() <= 1e-15 * std::max(1.0, cur.norm()) && violation(K, cur) <= 1e-13) break;
      }
      return cur;
    }
  }
  return x;
}

SpacePoint euclidean_project(const ConvexSet& K, const SpacePoint& x) {
  if (K.coordinates == Coordinates::dual)
    throw UnsupportedOperation("euclidean_project: dual-coordinate sets have no primal geometry");
  return SpacePoint(x.space(), euclidean_project_coords(K, x.coords()));
}

double violation(const ConvexSet& K, const Vec& x) {
  require_dim(K, x);
  switch (K.kind) {
    case SetKind::hyperplane: return std::abs(K.a.dot(x) - K.b) / K.a.norm();
    case SetKind::halfspace: return std::max(0.0, (K.a.dot(x) - K.b) / K.a.norm());
    case SetKind::affine: {
      double m = 0.0;
      const Vec r = K.A * x - K.rhs;
      for (Eigen::Index i = 0; i < r.size(); ++i) m = std::max(m, std::abs(r[i]) / K.A.row(i).norm());
      return m;
    }
    case SetKind::box: return std::max({0.0, (K.lower - x).maxCoeff(), (x - K.upper).maxCoeff()});
    case SetKind::simplex: return std::max({0.0, std::abs(x.sum() - K.total), -x.minCoeff()});
    case SetKind::norm_ball: return std::max(0.0, (x - K.center).norm() - K.radius);
    case SetKind::cone:
      if (K.cone == ConeKind::orthant) return std::max(0.0, -(K.sign * x).minCoeff());
      return (x - euclidean_project_coords(K, x)).norm();
    case SetKind::psd_trace_slice: {
      const CMat m = unflatten_hermitian(x, K.matrix_n);
      Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
      return std::max({0.0, std::abs(m.trace().real() - K.total), -es.eigenvalues().minCoeff()});
    }
    case SetKind::intersection: {
      double m = 0.0;
      for (const auto& p : K.parts) m = std::max(m, violation(p, x));
      return m;
    }
  }
  return 0.0;
}

bool contains(const ConvexSet& K, const Vec& x, double tol) { return violation(K, x) <= tol; }

bool contains(const ConvexSet& K, const SpacePoint& x, double tol) { return contains(K, x.coords(), tol); }

ConvexSet polar_cone(const ConvexSet& K) {
  if (K.kind != SetKind::cone) throw UnsupportedOperation("polar_cone: set is not a cone");
  ConvexSet P;
  switch (K.cone) {
    case ConeKind::orthant: P = ConvexSet::orthant(K.dim, -K.sign); break;
    case ConeKind::generated: P = ConvexSet::facet_cone(K.generators); break;
    case ConeKind::facets: P = ConvexSet::generated_cone(K.generators); break;
    case ConeKind::subspace: {
      Mat N = complement_basis(K.generators);
      if (N.cols() == 0) throw UnsupportedOperation("polar_cone: annihilator of the whole space is {0}");
      P = ConvexSet::subspace(N);
      break;
    }
    case ConeKind::second_order: P = ConvexSet::second_order_cone(K.dim, -K.sign); break;
  }
  P.coordinates = K.coordinates;
  return P;
}

SetWitness default_witness(const ConvexSet& K) {
  SetWitness w;
  w.interior = true;
  switch (K.kind) {
    case SetKind::hyperplane: w.point = K.b / K.a.squaredNorm() * K.a; break;
    case SetKind::halfspace: w.point = (K.b - 1.0) / K.a.squaredNorm() * K.a; break;
    case SetKind::affine: w.point = K.A.transpose() * (K.A * K.A.transpose()).ldlt().solve(K.rhs); break;
    case SetKind::box: {
      w.point.resize(K.dim);
      for (int i = 0; i < K.dim; ++i) {
        const double l = K.lower[i], u = K.upper[i];
        if (std::isfinite(l) && std::isfinite(u)) w.point[i] = 0.5 * (l + u);
        else if (std::isfinite(l)) w.point[i] = l + 1.0;
        else if (std::isfinite(u)) w.point[i] = u - 1.0;
        else w.point[i] = 0.0;
      }
      w.interior = (K.upper - K.lower).minCoeff() > 0;
      break;
    }
    case SetKind::simplex: w.point = Vec::Constant(K.dim, K.total / K.dim); break;
    case SetKind::norm_ball: w.point = K.center; break;
    case SetKind::cone:
      switch (K.cone) {
        case ConeKind::orthant: w.point = Vec::Constant(K.dim, K.sign); break;
        case ConeKind::generated: w.point = K.generators * Vec::Ones(K.generators.cols()); break;
        case ConeKind::facets: {
          const Mat& G = K.generators;
          w.point = -G * (G.transpose() * G).ldlt().solve(Vec::Ones(G.cols()));
          break;
        }
        case ConeKind::subspace: w.point = K.generators.col(0); break;
        case ConeKind::second_order:
          w.point = Vec::Zero(K.dim);
          w.point[K.dim - 1] = K.sign;
          break;
      }
      break;
    case SetKind::psd_trace_slice:
      w.point = flatten_hermitian(CMat::Identity(K.matrix_n, K.matrix_n) * (K.total / K.matrix_n));
      break;
    case SetKind::intersection: {
      Vec avg = Vec::Zero(K.dim);
      for (const auto& p : K.parts) avg += default_witness(p).point;
      avg /= static_cast<double>(K.parts.size());
      w.point = euclidean_project_coords(K, avg);
      w.interior = false;
      break;
    }
  }
  return w;
}

Vec sample_member(const ConvexSet& K, const Vec& center, double spread, Rng& rng) {
  return euclidean_project_coords(K, center + spread * rng.normal_vec(K.dim));
}

}  // namespace bregproj
