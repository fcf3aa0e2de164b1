#include "bregproj/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bregproj/error.hpp"

namespace bregproj {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

void require_exponent(double p, const char* name) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    std::ostringstream os;
    os << "norm exponent " << name << " must lie strictly in (1, inf), got " << p;
    throw ValidationError(os.str());
  }
}

double lp_norm(const Eigen::Ref<const Vec>& x, double p) {
  double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  // scale to avoid overflow for large p
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double weighted_norm(const Eigen::Ref<const Vec>& x, const Vec& w, double p) {
  double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += w[i] * std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Vec block_radii(const Eigen::Ref<const Vec>& x, int b, double p) {
  const Eigen::Index nb = x.size() / b;
  Vec r(nb);
  for (Eigen::Index k = 0; k < nb; ++k) r[k] = lp_norm(x.segment(k * b, b), p);
  return r;
}

Vec matrix_eigenvalues(const SpaceDescriptor& space, const Eigen::Ref<const Vec>& x) {
  Eigen::SelfAdjointEigenSolver<CMat> es(unflatten_hermitian(x, space.n), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double norm_with(const SpaceDescriptor& space, const NormSpec& spec, const Eigen::Ref<const Vec>& x) {
  if (x.size() != space.flat_dim()) throw ShapeError("norm: coordinate count does not match space");
  switch (spec.family) {
    case NormFamily::p_norm:
      return lp_norm(x, spec.p);
    case NormFamily::weighted_p:
      return weighted_norm(x, spec.weights, spec.p);
    case NormFamily::block_pq:
      return lp_norm(block_radii(x, spec.block_size, spec.p), spec.q);
    case NormFamily::schatten_p:
      return lp_norm(matrix_eigenvalues(space, x), spec.p);
  }
  return 0.0;
}

Vec gradient_with(const SpaceDescriptor& space, const NormSpec& spec, const Eigen::Ref<const Vec>& x) {
  const double nx = norm_with(space, spec, x);
  Vec g = Vec::Zero(x.size());
  if (nx == 0.0) return g;
  const double p = spec.p;
  switch (spec.family) {
    case NormFamily::p_norm:
      for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = sgn(x[i]) * std::pow(std::abs(x[i]) / nx, p - 1.0);
      break;
    case NormFamily::weighted_p:
      for (Eigen::Index i = 0; i < x.size(); ++i)
        g[i] = spec.weights[i] * sgn(x[i]) * std::pow(std::abs(x[i]) / nx, p - 1.0);
      break;
    case NormFamily::block_pq: {
      const int b = spec.block_size;
      Vec r = block_radii(x, b, p);
      for (Eigen::Index k = 0; k < r.size(); ++k) {
        if (r[k] == 0.0) continue;
        const double outer = std::pow(r[k] / nx, spec.q - 1.0);
        for (int i = 0; i < b; ++i) {
          const double xi = x[k * b + i];
          g[k * b + i] = outer * sgn(xi) * std::pow(std::abs(xi) / r[k], p - 1.0);
        }
      }
      break;
    }
    case NormFamily::schatten_p: {
      EigenSorted eig = eigen_sorted(unflatten_hermitian(x, space.n));
      CMat m = spectral_apply(eig, [&](double l) { return sgn(l) * std::pow(std::abs(l) / nx, p - 1.0); });
      g = flatten_hermitian(m);
      break;
    }
  }
  return g;
}

}  // namespace

std::string to_string(NormFamily family) {
  switch (family) {
    case NormFamily::p_norm: return "p_norm";
    case NormFamily::schatten_p: return "schatten_p";
    case NormFamily::weighted_p: return "weighted_p";
    case NormFamily::block_pq: return "block_pq";
  }
  return "?";
}

std::string to_string(SpaceKind kind) {
  return kind == SpaceKind::vector ? "vector" : "hermitian_matrix";
}

NormSpec NormSpec::lp(double p) {
  NormSpec s;
  s.family = NormFamily::p_norm;
  s.p = p;
  require_exponent(p, "p");
  return s;
}

NormSpec NormSpec::schatten(double p) {
  NormSpec s;
  s.family = NormFamily::schatten_p;
  s.p = p;
  require_exponent(p, "p");
  return s;
}

NormSpec NormSpec::weighted(double p, Vec weights) {
  NormSpec s;
  s.family = NormFamily::weighted_p;
  s.p = p;
  s.weights = std::move(weights);
  require_exponent(p, "p");
  return s;
}

NormSpec NormSpec::block(double p, double q, int block_size) {
  NormSpec s;
  s.family = NormFamily::block_pq;
  s.p = p;
  s.q = q;
  s.block_size = block_size;
  require_exponent(p, "p");
  require_exponent(q, "q");
  return s;
}

void NormSpec::validate(int dim) const {
  require_exponent(p, "p");
  if (family == NormFamily::block_pq) {
    require_exponent(q, "q");
    if (block_size < 1 || dim % block_size != 0)
      throw ValidationError("block_pq: block_size must divide the dimension");
  }
  if (family == NormFamily::weighted_p) {
    if (weights.size() != dim) throw ValidationError("weighted_p: weight count must equal the dimension");
    for (Eigen::Index i = 0; i < weights.size(); ++i)
      if (!std::isfinite(weights[i]) || !(weights[i] > 0)) throw ValidationError("weighted_p: weights must be positive");
  }
}

bool operator==(const NormSpec& a, const NormSpec& b) {
  if (a.family != b.family || a.p != b.p) return false;
  if (a.family == NormFamily::block_pq) return a.q == b.q && a.block_size == b.block_size;
  if (a.family == NormFamily::weighted_p) return a.weights.size() == b.weights.size() && a.weights == b.weights;
  return true;
}

double conjugate_exponent(double p) {
  require_exponent(p, "p");
  return p / (p - 1.0);
}

NormSpec dual_norm_spec(const NormSpec& spec) {
  NormSpec d = spec;
  d.p = conjugate_exponent(spec.p);
  if (spec.family == NormFamily::block_pq) d.q = conjugate_exponent(spec.q);
  if (spec.family == NormFamily::weighted_p) {
    d.weights = spec.weights.array().pow(1.0 - d.p).matrix();
  }
  return d;
}

SpaceDescriptor SpaceDescriptor::vectors(int n, NormSpec norm) {
  SpaceDescriptor s;
  s.kind = SpaceKind::vector;
  s.n = n;
  s.norm = std::move(norm);
  s.validate();
  return s;
}

SpaceDescriptor SpaceDescriptor::hermitian(int n, NormSpec norm) {
  SpaceDescriptor s;
  s.kind = SpaceKind::hermitian_matrix;
  s.n = n;
  s.norm = std::move(norm);
  s.validate();
  return s;
}

SpaceDescriptor SpaceDescriptor::dual() const {
  SpaceDescriptor d = *this;
  d.norm = dual_norm_spec(norm);
  return d;
}

void SpaceDescriptor::validate() const {
  if (n < 1) throw ValidationError("space dimension must be at least 1");
  if (is_matrix() && norm.family != NormFamily::schatten_p)
    throw ValidationError("hermitian_matrix spaces carry a schatten_p norm");
  if (!is_matrix() && norm.family == NormFamily::schatten_p)
    throw ValidationError("schatten_p norms apply to hermitian_matrix spaces only");
  norm.validate(flat_dim());
}

bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  return a.kind == b.kind && a.n == b.n && a.norm == b.norm;
}

Vec flatten_hermitian(const CMat& x) {
  const int n = static_cast<int>(x.rows());
  if (x.cols() != n) throw ShapeError("flatten_hermitian: matrix must be square");
  Vec c(n * n);
  for (int i = 0; i < n; ++i) c[i] = x(i, i).real();
  int k = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (x(i, j) + std::conj(x(j, i)));
      c[k++] = kSqrt2 * v.real();
      c[k++] = kSqrt2 * v.imag();
    }
  return c;
}

CMat unflatten_hermitian(const Eigen::Ref<const Vec>& coords, int n) {
  if (coords.size() != static_cast<Eigen::Index>(n) * n) throw ShapeError("unflatten_hermitian: coordinate count must be n*n");
  CMat x(n, n);
  for (int i = 0; i < n; ++i) x(i, i) = coords[i];
  int k = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Complex v(coords[k] / kSqrt2, coords[k + 1] / kSqrt2);
      k += 2;
      x(i, j) = v;
      x(j, i) = std::conj(v);
    }
  return x;
}

void require_hermitian(const CMat& x) {
  if (x.rows() != x.cols()) throw ShapeError("matrix must be square");
  if (!x.allFinite()) throw ValidationError("matrix has NaN or infinite entries");
  const double scale = std::max(1.0, x.norm());
  if ((x - x.adjoint()).norm() > 1e-12 * scale) throw ValidationError("matrix is not Hermitian");
}

void require_finite(const Eigen::Ref<const Vec>& x, const char* what) {
  if (!x.allFinite()) throw ValidationError(std::string(what) + ": NaN or infinite coordinate");
}

SpacePoint::SpacePoint(SpaceDescriptor space, Vec coords) : space_(std::move(space)), coords_(std::move(coords)) {
  if (coords_.size() != space_.flat_dim()) throw ShapeError("SpacePoint: data shape does not match space");
  require_finite(coords_, "SpacePoint");
}

SpacePoint SpacePoint::vector(const SpaceDescriptor& space, Vec values) {
  if (space.is_matrix()) throw ShapeError("SpacePoint::vector on a matrix space");
  return SpacePoint(space, std::move(values));
}

SpacePoint SpacePoint::matrix(const SpaceDescriptor& space, const CMat& values) {
  if (!space.is_matrix()) throw ShapeError("SpacePoint::matrix on a vector space");
  if (values.rows() != space.n || values.cols() != space.n) throw ShapeError("SpacePoint::matrix: wrong matrix side");
  require_hermitian(values);
  return SpacePoint(space, flatten_hermitian(values));
}

CMat SpacePoint::matrix() const {
  if (!space_.is_matrix()) {
    CMat d = CMat::Zero(coords_.size(), coords_.size());
    for (Eigen::Index i = 0; i < coords_.size(); ++i) d(i, i) = coords_[i];
    return d;
  }
  return unflatten_hermitian(coords_, space_.n);
}

double pairing(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& y) {
  if (x.size() != y.size()) throw ShapeError("pairing: dimension mismatch");
  return x.dot(y);
}

double pairing(const SpacePoint& x, const SpacePoint& y) {
  if (x.space().kind != y.space().kind || x.space().n != y.space().n) throw ShapeError("pairing: dimension mismatch");
  return pairing(x.coords(), y.coords());
}

double norm(const SpaceDescriptor& space, const Eigen::Ref<const Vec>& x) { return norm_with(space, space.norm, x); }

double norm(const SpacePoint& x) { return norm(x.space(), x.coords()); }

double dual_norm(const SpaceDescriptor& space, const Eigen::Ref<const Vec>& y) {
  return norm_with(space, dual_norm_spec(space.norm), y);
}

Vec norm_gradient(const SpaceDescriptor& space, const Eigen::Ref<const Vec>& x) {
  return gradient_with(space, space.norm, x);
}

EigenSorted eigen_sorted(const CMat& x) {
  require_hermitian(x);
  Eigen::SelfAdjointEigenSolver<CMat> es(x);
  const Eigen::Index n = x.rows();
  EigenSorted out;
  out.values.resize(n);
  out.basis.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = es.eigenvalues()[n - 1 - i];
    out.basis.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

EigenSorted eigen_sorted(const SpacePoint& x) {
  if (!x.space().is_matrix()) throw ValidationError("eigen_sorted expects a Hermitian matrix point");
  return eigen_sorted(x.matrix());
}

CMat spectral_apply(const EigenSorted& eig, const std::function<double(double)>& f) {
  Vec fv(eig.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv[i] = f(eig.values[i]);
  CMat out = eig.basis * fv.cast<Complex>().asDiagonal() * eig.basis.adjoint();
  return 0.5 * (out + out.adjoint());
}

CMat spectral_apply(const CMat& x, const std::function<double(double)>& f) {
  return spectral_apply(eigen_sorted(x), f);
}

PolarParts polar_decompose(const CMat& x) {
  EigenSorted eig = eigen_sorted(x);
  const double scale = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  const double cut = 1e-14 * scale;
  PolarParts out;
  out.basis = eig.basis;
  out.sign_values.resize(eig.values.size());
  out.modulus_values = eig.values.cwiseAbs();
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    out.sign_values[i] = std::abs(eig.values[i]) <= cut ? 0.0 : sgn(eig.values[i]);
  out.sign = eig.basis * out.sign_values.cast<Complex>().asDiagonal() * eig.basis.adjoint();
  out.modulus = eig.basis * out.modulus_values.cast<Complex>().asDiagonal() * eig.basis.adjoint();
  return out;
}

PolarParts polar_decompose(const SpacePoint& x) {
  if (x.space().is_matrix()) return polar_decompose(x.matrix());
  const Vec& v = x.coords();
  PolarParts out;
  out.basis = CMat::Identity(v.size(), v.size());
  out.sign_values = v.unaryExpr([](double t) { return sgn(t); });
  out.modulus_values = v.cwiseAbs();
  out.sign = out.sign_values.cast<Complex>().asDiagonal();
  out.modulus = out.modulus_values.cast<Complex>().asDiagonal();
  return out;
}

CMat signed_power(const CMat& x, double r) {
  const EigenSorted eig = eigen_sorted(x);
  const double cut = 1e-14 * (eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0);
  return spectral_apply(eig, [r, cut](double l) { return std::abs(l) <= cut ? 0.0 : sgn(l) * std::pow(std::abs(l), r); });
}

Vec signed_power(const Eigen::Ref<const Vec>& x, double r) {
  Vec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[i] == 0.0 ? 0.0 : sgn(x[i]) * std::pow(std::abs(x[i]), r);
  return out;
}

}  // namespace bregproj
