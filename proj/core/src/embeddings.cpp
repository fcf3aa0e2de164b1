#include "bregproj/embeddings.hpp"

#include <cmath>

#include "bregproj/error.hpp"

namespace bregproj {

std::string to_string(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::identity: return "identity";
    case EmbeddingKind::mazur: return "mazur";
    case EmbeddingKind::lozanovskii: return "lozanovskii";
    case EmbeddingKind::spin_factor: return "spin_factor";
  }
  return "?";
}

Vec mazur(const SpaceDescriptor& space, double g1, double g2, const Vec& x, double scale) {
  if (!(g1 > 0) || !(g2 > 0)) throw ValidationError("mazur: exponents must be positive");
  if (!(scale > 0)) throw ValidationError("mazur: scale must be positive");
  if (x.size() != space.flat_dim()) throw ShapeError("mazur: point has wrong dimension");
  const double r = g2 / g1;
  if (space.is_matrix()) return scale * flatten_hermitian(signed_power(unflatten_hermitian(x, space.n), r));
  return scale * signed_power(Eigen::Ref<const Vec>(x), r);
}

SpacePoint mazur(double g1, double g2, const SpacePoint& x, double scale) {
  return SpacePoint(x.space(), mazur(x.space(), g1, g2, x.coords(), scale));
}

namespace {

SpaceDescriptor with_exponent(const SpaceDescriptor& s, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) return s;
  return s.is_matrix() ? SpaceDescriptor::hermitian(s.n, NormSpec::schatten(p))
                       : SpaceDescriptor::vectors(s.n, NormSpec::lp(p));
}

// ||z||_1 for a vector or the trace norm of a Hermitian matrix.
double trace_norm(const SpaceDescriptor& s, const Vec& z) {
  if (!s.is_matrix()) return z.lpNorm<1>();
  return eigen_sorted(unflatten_hermitian(z, s.n)).values.cwiseAbs().sum();
}

}  // namespace

Embedding Embedding::identity(SpaceDescriptor space) {
  space.validate();
  Embedding e;
  e.kind_ = EmbeddingKind::identity;
  e.source_ = space;
  e.target_ = space;
  return e;
}

Embedding Embedding::mazur(SpaceDescriptor source, double g1, double g2, double scale) {
  if (!(g1 > 0) || !(g2 > 0) || !(scale > 0)) throw ValidationError("mazur embedding: parameters must be positive");
  Embedding e;
  e.kind_ = EmbeddingKind::mazur;
  e.source_ = with_exponent(source, 1.0 / g1);
  e.target_ = with_exponent(source, 1.0 / g2);
  e.g1_ = g1;
  e.g2_ = g2;
  e.scale_ = scale;
  return e;
}

Embedding Embedding::lozanovskii(SpaceDescriptor target) {
  target.validate();
  Embedding e;
  e.kind_ = EmbeddingKind::lozanovskii;
  e.source_ = target;
  e.target_ = target;
  return e;
}

Embedding Embedding::spin_factor(SpaceDescriptor inner) {
  inner.validate();
  if (inner.is_matrix()) throw UnsupportedOperation("spin factor: inner space must be a vector space");
  Embedding e;
  e.kind_ = EmbeddingKind::spin_factor;
  e.source_ = inner;
  e.target_ = inner;
  return e;
}

int Embedding::source_dim() const {
  return kind_ == EmbeddingKind::spin_factor ? source_.flat_dim() + 1 : source_.flat_dim();
}

double Embedding::holder_exponent() const {
  switch (kind_) {
    case EmbeddingKind::identity: return 1.0;
    case EmbeddingKind::mazur: return std::min(g2_ / g1_, 1.0);
    case EmbeddingKind::spin_factor: return 1.0;
    case EmbeddingKind::lozanovskii: return std::nan("");
  }
  return std::nan("");
}

std::string Embedding::domain() const {
  switch (kind_) {
    case EmbeddingKind::identity: return "full space";
    case EmbeddingKind::mazur: return "full space";
    case EmbeddingKind::lozanovskii: return "positive cone";
    case EmbeddingKind::spin_factor: return "base K";
  }
  return "?";
}

bool Embedding::in_domain(const Vec& phi) const {
  if (phi.size() != source_dim() || !phi.allFinite()) return false;
  switch (kind_) {
    case EmbeddingKind::identity:
    case EmbeddingKind::mazur: return true;
    case EmbeddingKind::lozanovskii: {
      const double tol = -1e-12 * std::max(1.0, phi.cwiseAbs().maxCoeff());
      if (!source_.is_matrix()) return phi.minCoeff() >= tol;
      return eigen_sorted(unflatten_hermitian(phi, source_.n)).values.minCoeff() >= tol;
    }
    case EmbeddingKind::spin_factor: {
      const double lam = phi[phi.size() - 1];
      return std::abs(lam - 1.0) <= 1e-12 && norm(source_, phi.head(phi.size() - 1)) <= 1.0 + 1e-12;
    }
  }
  return false;
}

Vec Embedding::forward(const Vec& phi) const {
  if (phi.size() != source_dim()) throw ShapeError("embedding: state has wrong dimension");
  switch (kind_) {
    case EmbeddingKind::identity: return phi;
    case EmbeddingKind::mazur: return bregproj::mazur(source_, g1_, g2_, phi, scale_);
    case EmbeddingKind::lozanovskii: {
      if (!in_domain(phi)) throw DomainError("lozanovskii: state outside the positive cone");
      return lozanovskii_forward(target_, phi).point;
    }
    case EmbeddingKind::spin_factor: {
      if (!in_domain(phi)) throw DomainError("spin factor: state outside the base");
      SpinFactorPoint v{phi.head(phi.size() - 1), phi[phi.size() - 1]};
      return spin_embed(source_, v);
    }
  }
  return phi;
}

Vec Embedding::inverse(const Vec& x) const {
  if (x.size() != target_.flat_dim()) throw ShapeError("embedding: image point has wrong dimension");
  switch (kind_) {
    case EmbeddingKind::identity: return x;
    case EmbeddingKind::mazur: return bregproj::mazur(source_, g2_, g1_, x / scale_);
    case EmbeddingKind::lozanovskii: {
      const double r = norm(target_, x);
      if (r == 0.0) return Vec::Zero(x.size());
      return r * lozanovskii_inverse(target_, x / r);
    }
    case EmbeddingKind::spin_factor: {
      const SpinFactorPoint v = spin_lift(x);
      Vec out(x.size() + 1);
      out << v.x, v.lambda;
      return out;
    }
  }
  return x;
}

double d_gamma(const SpaceDescriptor& space, const Vec& phi, const Vec& psi, double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("d_gamma: gamma must lie in (0,1)");
  if (phi.size() != space.flat_dim() || psi.size() != space.flat_dim()) throw ShapeError("d_gamma: dimension mismatch");
  const Vec a = mazur(space, 1.0, gamma, phi);
  const Vec b = mazur(space, 1.0, 1.0 - gamma, psi);
  return trace_norm(space, phi) / (1.0 - gamma) + trace_norm(space, psi) / gamma -
         a.dot(b) / (gamma * (1.0 - gamma));
}

double d_gamma_composed(const SpaceDescriptor& space, const Vec& phi, const Vec& psi, double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("d_gamma: gamma must lie in (0,1)");
  const Embedding ell = Embedding::mazur(space, 1.0, gamma);
  const PotentialPtr pot = make_gauge_potential(ell.target(), Gauge::power(gamma * (1.0 - gamma), gamma));
  return extended_bregman(ell, *pot, phi, psi).value;
}

DivergenceValue extended_bregman(const Embedding& ell, const Potential& psi, const Vec& phi, const Vec& chi) {
  if (!ell.in_domain(phi) || !ell.in_domain(chi)) throw DomainError("extended_bregman: state outside the embedding domain");
  const Vec a = ell.forward(phi), b = ell.forward(chi);
  if (a.size() != psi.dim()) throw ShapeError("extended_bregman: embedding image does not match the potential");
  DivergenceValue d;
  d.left_in_domain = psi.in_domain(a);
  d.right_in_interior = psi.in_interior(b);
  d.value = psi.divergence(a, b);
  return d;
}

Vec lozanovskii_inverse(const SpaceDescriptor& X, const Vec& x) {
  X.validate();
  if (x.size() != X.flat_dim()) throw ShapeError("lozanovskii_inverse: dimension mismatch");
  const double r = norm(X, x);
  if (std::abs(r - 1.0) > 1e-10) throw PreconditionError("lozanovskii_inverse: point is not on the unit sphere");
  const Vec j = norm_gradient(X, x);
  if (!X.is_matrix()) return j.cwiseAbs().cwiseProduct(x);
  const CMat J = unflatten_hermitian(j, X.n);
  const CMat absJ = spectral_apply(J, [](double l) { return std::abs(l); });
  const CMat P = absJ * unflatten_hermitian(x, X.n);
  return flatten_hermitian(0.5 * (P + P.adjoint()));
}

LozanovskiiResult lozanovskii_forward(const SpaceDescriptor& X, const Vec& z, double tol) {
  X.validate();
  if (z.size() != X.flat_dim()) throw ShapeError("lozanovskii_forward: dimension mismatch");
  require_finite(z, "lozanovskii_forward");
  const double floor = -1e-12 * std::max(1.0, z.cwiseAbs().maxCoeff());
  LozanovskiiResult out;
  const double mass = trace_norm(X, z);
  if (mass == 0.0) {
    out.point = Vec::Zero(z.size());
    out.converged = true;
    return out;
  }
  const NormSpec& ns = X.norm;
  Vec y;
  if (X.is_matrix()) {
    const CMat Z = unflatten_hermitian(z / mass, X.n);
    const EigenSorted e = eigen_sorted(Z);
    if (e.values.minCoeff() < floor) throw PreconditionError("lozanovskii_forward: input is not positive semidefinite");
    y = flatten_hermitian(spectral_apply(e, [&](double l) { return l <= 0 ? 0.0 : std::pow(l, 1.0 / ns.p); }));
  } else {
    if (z.minCoeff() < floor) throw PreconditionError("lozanovskii_forward: input has negative entries");
    const Vec zn = (z / mass).cwiseMax(0.0);
    y.resize(zn.size());
    switch (ns.family) {
      case NormFamily::p_norm:
      case NormFamily::schatten_p:
        for (Eigen::Index i = 0; i < zn.size(); ++i) y[i] = std::pow(zn[i], 1.0 / ns.p);
        break;
      case NormFamily::weighted_p:
        for (Eigen::Index i = 0; i < zn.size(); ++i) y[i] = std::pow(zn[i] / ns.weights[i], 1.0 / ns.p);
        break;
      case NormFamily::block_pq: {
        // the block mass equals r_b^q and z_i = r_b^{q-p} y_i^p
        const int bs = ns.block_size;
        for (Eigen::Index b0 = 0; b0 < zn.size(); b0 += bs) {
          const double sb = zn.segment(b0, bs).sum();
          const double rb = std::pow(sb, 1.0 / ns.q);
          for (int i = 0; i < bs; ++i)
            y[b0 + i] = rb == 0.0 ? 0.0 : std::pow(zn[b0 + i] * std::pow(rb, ns.p - ns.q), 1.0 / ns.p);
        }
        break;
      }
    }
  }
  const double ry = norm(X, y);
  y /= ry;
  out.residual = (lozanovskii_inverse(X, y) - z / mass).lpNorm<1>();
  out.point = mass * y;
  out.converged = out.residual <= tol;
  return out;
}

bool SpinFactorPoint::positive(const SpaceDescriptor& inner) const { return lambda >= bregproj::norm(inner, x); }

double SpinFactorPoint::norm(const SpaceDescriptor& inner) const {
  return std::max(std::abs(lambda), bregproj::norm(inner, x));
}

Vec spin_embed(const SpaceDescriptor& inner, const SpinFactorPoint& v) {
  if (v.x.size() != inner.flat_dim()) throw ShapeError("spin_embed: dimension mismatch");
  if (std::abs(v.lambda - 1.0) > 1e-12) throw PreconditionError("spin_embed: point is not on the base (lambda != 1)");
  if (norm(inner, v.x) > 1.0 + 1e-12) throw PreconditionError("spin_embed: point is not on the base (||x|| > 1)");
  return v.x;
}

SpinFactorPoint spin_lift(const Vec& x) { return {x, 1.0}; }

ProjectionResult pullback_project(const Embedding& ell, const PotentialPtr& psi, const ConvexSet& image_set, Side side,
                                  const Vec& phi, ProjectionOptions opt) {
  if (!ell.in_domain(phi)) throw DomainError("pullback_project: state outside the embedding domain");
  const Vec a = ell.forward(phi);
  ProjectionResult r = side == Side::left ? left_project(psi, image_set, a, opt) : right_project(psi, image_set, a, opt);
  r.point = ell.inverse(r.point);
  return r;
}

CMat CptpMap::apply(const CMat& rho) const {
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (const auto& K : kraus) out += K * rho * K.adjoint();
  return 0.5 * (out + out.adjoint());
}

double CptpMap::trace_preservation_error() const {
  if (kraus.empty()) return kInf;
  CMat S = CMat::Zero(kraus[0].cols(), kraus[0].cols());
  for (const auto& K : kraus) S += K.adjoint() * K;
  return (S - CMat::Identity(S.rows(), S.cols())).cwiseAbs().maxCoeff();
}

CptpMap random_cptp(int n, int kraus_count, Rng& rng) {
  if (n < 1 || kraus_count < 1) throw ValidationError("random_cptp: sizes must be positive");
  const CMat U = rng.unitary(n * kraus_count);
  const CMat V = U.leftCols(n);
  CptpMap m;
  for (int k = 0; k < kraus_count; ++k) m.kraus.push_back(V.middleRows(k * n, n));
  return m;
}

}  // namespace bregproj
