#include "bregproj/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bregproj/error.hpp"
#include "bregproj/random.hpp"

namespace bregproj {

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::gauge: return "gauge";
    case PotentialKind::power_sum: return "power_sum";
    case PotentialKind::kl: return "kl";
    case PotentialKind::burg: return "burg";
    case PotentialKind::fermi_dirac: return "fermi_dirac";
    case PotentialKind::alpha_family: return "alpha_family";
    case PotentialKind::squared_pnorm: return "squared_pnorm";
    case PotentialKind::quadratic: return "quadratic";
    case PotentialKind::spectral_lift: return "spectral_lift";
    case PotentialKind::conjugate_view: return "conjugate_view";
    case PotentialKind::combination: return "combination";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Potential base

void Potential::check_shape(const Vec& x) const {
  if (x.size() != dim()) throw ShapeError(name() + ": point has wrong dimension");
  require_finite(x, "potential argument");
}

Mat numeric_hessian(const Potential& psi, const Vec& x, bool conjugate) {
  const Eigen::Index n = x.size();
  Mat H(n, n);
  auto inside = [&](const Vec& p) { return conjugate ? psi.conjugate_in_interior(p) : psi.in_interior(p); };
  auto grad = [&](const Vec& p) { return conjugate ? psi.conjugate_gradient(p) : psi.gradient(p); };
  for (Eigen::Index i = 0; i < n; ++i) {
    double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    Vec xp = x, xm = x;
    for (int tries = 0; tries < 40; ++tries) {
      xp[i] = x[i] + h;
      xm[i] = x[i] - h;
      if (inside(xp) && inside(xm)) break;
      h *= 0.5;
    }
    H.col(i) = (grad(xp) - grad(xm)) / (2 * h);
  }
  return 0.5 * (H + H.transpose());
}

Mat Potential::hessian(const Vec& x) const { return numeric_hessian(*this, x, false); }

Mat Potential::conjugate_hessian(const Vec& y) const {
  const Vec x = conjugate_gradient(y);
  const Mat H = hessian(x);
  return H.ldlt().solve(Mat::Identity(H.rows(), H.cols()));
}

Vec Potential::interior_point() const { return Vec::Zero(dim()); }

bool Potential::in_domain(const Vec& x) const { return std::isfinite(value(x)); }

double Potential::divergence(const Vec& x, const Vec& y) const {
  if (!in_interior(y)) return kInf;
  const double vx = value(x);
  if (!std::isfinite(vx)) return kInf;
  return vx - value(y) - (x - y).dot(gradient(y));
}

PotentialEval Potential::eval(const SpacePoint& x) const {
  check_shape(x.coords());
  PotentialEval e;
  e.value = value(x.coords());
  e.in_interior = in_interior(x.coords());
  if (e.in_interior) e.gradient = SpacePoint(space().dual(), gradient(x.coords()));
  return e;
}

PotentialEval Potential::conjugate_eval(const SpacePoint& y) const {
  check_shape(y.coords());
  PotentialEval e;
  e.value = conjugate_value(y.coords());
  e.in_interior = conjugate_in_interior(y.coords());
  if (e.in_interior) e.gradient = SpacePoint(space(), conjugate_gradient(y.coords()));
  return e;
}

// ---------------------------------------------------------------------------
// Scalar functions

namespace {

double xlogx(double t) { return t == 0.0 ? 0.0 : t * std::log(t); }
double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

}  // namespace

ScalarFunction ScalarFunction::power_sum(double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("power_sum: gamma must lie in (0, 1)");
  return {Kind::power_sum, gamma};
}

ScalarFunction ScalarFunction::alpha(double a) {
  if (!((a > 0 && a < 1) || a < 0) || !std::isfinite(a))
    throw ValidationError("alpha family: alpha must lie in (0, 1) or be negative");
  return {Kind::alpha, a};
}

namespace {

// prefactor of the alpha family: 1/(alpha-1) on (0,1), 1/(1-alpha) for alpha < 0
double alpha_c(double a) { return a > 0 ? 1.0 / (a - 1.0) : 1.0 / (1.0 - a); }

}  // namespace

double ScalarFunction::value(double t) const {
  switch (kind) {
    case Kind::power_sum: return param * std::pow(std::abs(t), 1.0 / param);
    case Kind::kl: return t < 0 ? kInf : xlogx(t) - t;
    case Kind::burg: return t <= 0 ? kInf : -std::log(t);
    case Kind::fermi_dirac: return (t < 0 || t > 1) ? kInf : xlogx(t) + xlogx(1.0 - t);
    case Kind::alpha: {
      const double c = alpha_c(param);
      if (t < 0) return kInf;
      if (t == 0) return param > 0 ? -c : kInf;
      return c * (std::pow(t, param) - 1.0);
    }
  }
  return kInf;
}

bool ScalarFunction::interior(double t) const {
  switch (kind) {
    case Kind::power_sum: return std::isfinite(t);
    case Kind::kl:
    case Kind::burg:
    case Kind::alpha: return t > 0 && std::isfinite(t);
    case Kind::fermi_dirac: return t > 0 && t < 1;
  }
  return false;
}

double ScalarFunction::d1(double t) const {
  switch (kind) {
    case Kind::power_sum: return sgn(t) * std::pow(std::abs(t), 1.0 / param - 1.0);
    case Kind::kl: return std::log(t);
    case Kind::burg: return -1.0 / t;
    case Kind::fermi_dirac: return std::log(t) - std::log1p(-t);
    case Kind::alpha: return alpha_c(param) * param * std::pow(t, param - 1.0);
  }
  return 0.0;
}

double ScalarFunction::d2(double t) const {
  switch (kind) {
    case Kind::power_sum: {
      const double e = 1.0 / param - 2.0;
      if (t == 0.0) return e > 0 ? 0.0 : (e == 0 ? 1.0 : kInf);
      return (1.0 / param - 1.0) * std::pow(std::abs(t), e);
    }
    case Kind::kl: return 1.0 / t;
    case Kind::burg: return 1.0 / (t * t);
    case Kind::fermi_dirac: return 1.0 / (t * (1.0 - t));
    case Kind::alpha: return alpha_c(param) * param * (param - 1.0) * std::pow(t, param - 2.0);
  }
  return 0.0;
}

double ScalarFunction::conj(double s) const {
  switch (kind) {
    case Kind::power_sum: return (1.0 - param) * std::pow(std::abs(s), 1.0 / (1.0 - param));
    case Kind::kl: return std::exp(s);
    case Kind::burg: return s < 0 ? -std::log(-s) - 1.0 : kInf;
    case Kind::fermi_dirac: return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
    case Kind::alpha: {
      const double c = alpha_c(param);
      if (s > 0) return kInf;
      if (s == 0) return param < 0 ? c : kInf;
      const double t = conj_d1(s);
      return s * t - c * (std::pow(t, param) - 1.0);
    }
  }
  return kInf;
}

bool ScalarFunction::conj_interior(double s) const {
  switch (kind) {
    case Kind::power_sum:
    case Kind::kl:
    case Kind::fermi_dirac: return std::isfinite(s);
    case Kind::burg:
    case Kind::alpha: return s < 0;
  }
  return false;
}

double ScalarFunction::conj_d1(double s) const {
  switch (kind) {
    case Kind::power_sum: return sgn(s) * std::pow(std::abs(s), param / (1.0 - param));
    case Kind::kl: return std::exp(s);
    case Kind::burg: return -1.0 / s;
    case Kind::fermi_dirac: return s > 0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
    case Kind::alpha: {
      const double ca = alpha_c(param) * param;
      return std::pow(s / ca, 1.0 / (param - 1.0));
    }
  }
  return 0.0;
}

double ScalarFunction::conj_d2(double s) const {
  switch (kind) {
    case Kind::power_sum: {
      const double e = param / (1.0 - param) - 1.0;
      if (s == 0.0) return e > 0 ? 0.0 : (e == 0 ? 1.0 : kInf);
      return param / (1.0 - param) * std::pow(std::abs(s), e);
    }
    case Kind::kl: return std::exp(s);
    case Kind::burg: return 1.0 / (s * s);
    case Kind::fermi_dirac: {
      const double p = conj_d1(s);
      return p * (1.0 - p);
    }
    case Kind::alpha: return 1.0 / d2(conj_d1(s));
  }
  return 0.0;
}

double ScalarFunction::divergence(double a, double b) const {
  if (!interior(b)) return kInf;
  switch (kind) {
    case Kind::kl:
      if (a < 0) return kInf;
      return (a == 0 ? 0.0 : a * std::log(a / b)) - a + b;
    case Kind::burg:
      if (a <= 0) return kInf;
      return a / b - std::log(a / b) - 1.0;
    case Kind::fermi_dirac:
      if (a < 0 || a > 1) return kInf;
      return (a == 0 ? 0.0 : a * std::log(a / b)) + (a == 1 ? 0.0 : (1 - a) * std::log((1 - a) / (1 - b)));
    default: {
      const double va = value(a);
      if (!std::isfinite(va)) return kInf;
      return va - value(b) - (a - b) * d1(b);
    }
  }
}

double ScalarFunction::sample_interior(double u) const {
  switch (kind) {
    case Kind::power_sum: return 4.0 * u - 2.0;
    case Kind::fermi_dirac: return 0.02 + 0.96 * u;
    default: return std::exp(3.0 * u - 1.5);
  }
}

std::string ScalarFunction::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::power_sum: os << "power_sum(gamma=" << param << ")"; break;
    case Kind::kl: os << "kl"; break;
    case Kind::burg: os << "burg"; break;
    case Kind::fermi_dirac: os << "fermi_dirac"; break;
    case Kind::alpha: os << "alpha(" << param << ")"; break;
  }
  return os.str();
}

PotentialKind ScalarFunction::potential_kind() const {
  switch (kind) {
    case Kind::power_sum: return PotentialKind::power_sum;
    case Kind::kl: return PotentialKind::kl;
    case Kind::burg: return PotentialKind::burg;
    case Kind::fermi_dirac: return PotentialKind::fermi_dirac;
    case Kind::alpha: return PotentialKind::alpha_family;
  }
  return PotentialKind::kl;
}

// ---------------------------------------------------------------------------
// Separable vector potentials

namespace {

class SeparablePotential final : public Potential {
 public:
  SeparablePotential(SpaceDescriptor space, ScalarFunction f) : Potential(std::move(space)), f_(f) {}

  const ScalarFunction& scalar() const { return f_; }

  PotentialKind kind() const override { return f_.potential_kind(); }
  std::string name() const override { return f_.name(); }

  double value(const Vec& x) const override {
    check_shape(x);
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += f_.value(x[i]);
    return s;
  }
  bool in_interior(const Vec& x) const override {
    if (x.size() != dim()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (!f_.interior(x[i])) return false;
    return true;
  }
  Vec gradient(const Vec& x) const override {
    check_shape(x);
    if (!in_interior(x)) throw DomainError(name() + ": gradient outside the domain interior");
    return x.unaryExpr([this](double t) { return f_.d1(t); });
  }
  Mat hessian(const Vec& x) const override {
    if (!in_interior(x)) throw DomainError(name() + ": hessian outside the domain interior");
    return x.unaryExpr([this](double t) { return f_.d2(t); }).asDiagonal();
  }
  double conjugate_value(const Vec& y) const override {
    check_shape(y);
    double s = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) s += f_.conj(y[i]);
    return s;
  }
  bool conjugate_in_interior(const Vec& y) const override {
    if (y.size() != dim()) return false;
    for (Eigen::Index i = 0; i < y.size(); ++i)
      if (!f_.conj_interior(y[i])) return false;
    return true;
  }
  Vec conjugate_gradient(const Vec& y) const override {
    check_shape(y);
    if (!conjugate_in_interior(y)) throw DomainError(name() + ": conjugate gradient outside the domain interior");
    return y.unaryExpr([this](double s) { return f_.conj_d1(s); });
  }
  Mat conjugate_hessian(const Vec& y) const override {
    if (!conjugate_in_interior(y)) throw DomainError(name() + ": conjugate hessian outside the domain interior");
    return y.unaryExpr([this](double s) { return f_.conj_d2(s); }).asDiagonal();
  }
  double divergence(const Vec& x, const Vec& y) const override {
    if (!in_interior(y)) return kInf;
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += f_.divergence(x[i], y[i]);
    return s;
  }
  Vec interior_point() const override { return Vec::Constant(dim(), f_.sample_interior(0.5)); }

 private:
  ScalarFunction f_;
};

// ---------------------------------------------------------------------------
// Gauge potentials

class GaugePotential final : public Potential {
 public:
  GaugePotential(SpaceDescriptor space, Gauge g, PotentialKind kind)
      : Potential(space), core_(space, std::move(g)), kind_(kind) {}

  PotentialKind kind() const override { return kind_; }
  std::string name() const override {
    std::ostringstream os;
    if (kind_ == PotentialKind::squared_pnorm) {
      os << "squared_pnorm(p=" << space().norm.p << ")";
    } else if (core_.gauge().kind() == Gauge::Kind::power) {
      os << "gauge(alpha=" << core_.gauge().alpha() << ",beta=" << core_.gauge().beta() << ","
         << to_string(space().norm.family) << " p=" << space().norm.p << ")";
    } else {
      os << "gauge(tabulated," << to_string(space().norm.family) << " p=" << space().norm.p << ")";
    }
    return os.str();
  }

  const GaugePotentialCore& core() const { return core_; }

  double value(const Vec& x) const override {
    check_shape(x);
    return core_.value(x);
  }
  bool in_interior(const Vec& x) const override { return x.size() == dim() && x.allFinite(); }
  Vec gradient(const Vec& x) const override {
    check_shape(x);
    return core_.duality_map(x);
  }
  double conjugate_value(const Vec& y) const override {
    check_shape(y);
    return core_.conjugate(y);
  }
  bool conjugate_in_interior(const Vec& y) const override { return y.size() == dim() && y.allFinite(); }
  Vec conjugate_gradient(const Vec& y) const override {
    check_shape(y);
    return core_.conjugate_duality_map(y);
  }
  Mat hessian(const Vec& x) const override {
    if (is_euclidean_hilbert()) return Mat::Identity(dim(), dim());
    if (auto H = pnorm_hessian(x, space().norm.p, core_.gauge())) return *H;
    return numeric_hessian(*this, x, false);
  }
  Mat conjugate_hessian(const Vec& y) const override {
    if (is_euclidean_hilbert()) return Mat::Identity(dim(), dim());
    if (auto H = pnorm_hessian(y, conjugate_exponent(space().norm.p), core_.gauge().inverse())) return *H;
    return numeric_hessian(*this, y, true);
  }
  PotentialPtr spectral_inner() const override {
    if (!space().is_matrix()) return nullptr;
    return std::make_shared<GaugePotential>(SpaceDescriptor::vectors(space().n, NormSpec::lp(space().norm.p)),
                                            core_.gauge(), kind_);
  }
  Vec interior_point() const override {
    Vec x = Vec::Zero(dim());
    if (space().is_matrix()) x.head(space().n).setConstant(0.5);
    else x.setConstant(0.5);
    return x;
  }

 private:
  bool is_euclidean_hilbert() const {
    const auto& g = core_.gauge();
    return g.kind() == Gauge::Kind::power && g.alpha() == 1.0 && g.beta() == 0.5 && space().norm.p == 2.0 &&
           (space().norm.family == NormFamily::p_norm || space().norm.family == NormFamily::schatten_p);
  }

  // phi'(r) g g^T + phi(r) (p-1)/r [diag((|x|/r)^(p-2)) - g g^T], g the norm gradient
  std::optional<Mat> pnorm_hessian(const Vec& x, double p, const Gauge& g) const {
    check_shape(x);
    if (space().is_matrix() || space().norm.family != NormFamily::p_norm) return std::nullopt;
    const double r = x.lpNorm<Eigen::Infinity>() == 0.0 ? 0.0 : std::pow(x.cwiseAbs().array().pow(p).sum(), 1.0 / p);
    if (r == 0.0) return std::nullopt;
    if (p < 2.0 && (x.array() == 0.0).any()) return std::nullopt;
    const Vec u = x.cwiseAbs() / r;
    Vec gr(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) gr[i] = (x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0)) * std::pow(u[i], p - 1.0);
    const double c = g(r) * (p - 1.0) / r;
    Mat H = (g.derivative(r) - c) * gr * gr.transpose();
    for (Eigen::Index i = 0; i < x.size(); ++i) H(i, i) += c * std::pow(u[i], p - 2.0);
    return H;
  }

  GaugePotentialCore core_;
  PotentialKind kind_;
};

// ---------------------------------------------------------------------------
// Quadratic potentials

class QuadraticPotential final : public Potential {
 public:
  QuadraticPotential(SpaceDescriptor space, const Mat& T) : Potential(std::move(space)) {
    if (T.rows() != dim() || T.cols() != dim()) throw ShapeError("quadratic: T must be flat_dim x flat_dim");
    if (!T.allFinite()) throw ValidationError("quadratic: T has NaN or infinite entries");
    Ts_ = 0.5 * (T + T.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(Ts_);
    if (es.eigenvalues().minCoeff() < 1e-8)
      throw ValidationError("quadratic: symmetric part of T must be positive definite (min eigenvalue >= 1e-8)");
    llt_.compute(Ts_);
    Tinv_ = llt_.solve(Mat::Identity(dim(), dim()));
    Tinv_ = 0.5 * (Tinv_ + Tinv_.transpose());
  }

  PotentialKind kind() const override { return PotentialKind::quadratic; }
  std::string name() const override { return "quadratic"; }

  const Mat& matrix() const { return Ts_; }

  double value(const Vec& x) const override {
    check_shape(x);
    return 0.5 * x.dot(Ts_ * x);
  }
  bool in_interior(const Vec& x) const override { return x.size() == dim() && x.allFinite(); }
  Vec gradient(const Vec& x) const override {
    check_shape(x);
    return Ts_ * x;
  }
  Mat hessian(const Vec&) const override { return Ts_; }
  double conjugate_value(const Vec& y) const override {
    check_shape(y);
    return 0.5 * y.dot(Tinv_ * y);
  }
  bool conjugate_in_interior(const Vec& y) const override { return y.size() == dim() && y.allFinite(); }
  Vec conjugate_gradient(const Vec& y) const override {
    check_shape(y);
    return llt_.solve(y);
  }
  Mat conjugate_hessian(const Vec&) const override { return Tinv_; }
  double divergence(const Vec& x, const Vec& y) const override {
    const Vec d = x - y;
    return 0.5 * d.dot(Ts_ * d);
  }

 private:
  Mat Ts_;
  Mat Tinv_;
  Eigen::LLT<Mat> llt_;
};

// ---------------------------------------------------------------------------
// Spectral lifts

// Divided differences of g at the spectrum; g1 on the diagonal.
Mat divided_differences(const Vec& l, const std::function<double(double)>& g, const std::function<double(double)>& g1) {
  const Eigen::Index n = l.size();
  Mat G(n, n);
  Vec gv = l.unaryExpr(g);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = l[i] - l[j];
      const double sc = std::max({1.0, std::abs(l[i]), std::abs(l[j])});
      if (std::abs(d) <= 1e-9 * sc) G(i, j) = g1(0.5 * (l[i] + l[j]));
      else G(i, j) = (gv[i] - gv[j]) / d;
    }
  return G;
}

// Flat Jacobian of X -> V (G o (V* X V)) V* at fixed V, G.
Mat daleckii_krein(const CMat& V, const Mat& G, int n) {
  const int N = n * n;
  Mat J(N, N);
  Vec e = Vec::Zero(N);
  for (int k = 0; k < N; ++k) {
    e.setZero();
    e[k] = 1.0;
    CMat H = unflatten_hermitian(e, n);
    CMat B = V.adjoint() * H * V;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B(i, j) *= G(i, j);
    CMat R = V * B * V.adjoint();
    J.col(k) = flatten_hermitian(0.5 * (R + R.adjoint()));
  }
  return 0.5 * (J + J.transpose());
}

class SpectralPotential final : public Potential {
 public:
  SpectralPotential(SpaceDescriptor space, PotentialPtr inner) : Potential(std::move(space)), f_(std::move(inner)) {
    if (f_->space().is_matrix()) throw ValidationError("spectral_lift: inner potential must act on vectors");
    if (f_->dim() != this->space().n) throw ShapeError("spectral_lift: inner dimension must equal the matrix side");
    if (auto* s = dynamic_cast<const SeparablePotential*>(f_.get())) scalar_ = s->scalar();
  }

  PotentialKind kind() const override { return PotentialKind::spectral_lift; }
  std::string name() const override { return "spectral(" + f_->name() + ")"; }
  PotentialPtr spectral_inner() const override { return f_; }

  double value(const Vec& x) const override {
    check_shape(x);
    return f_->value(eig(x).values);
  }
  bool in_interior(const Vec& x) const override {
    if (x.size() != dim() || !x.allFinite()) return false;
    return f_->in_interior(eig(x).values);
  }
  Vec gradient(const Vec& x) const override {
    check_shape(x);
    EigenSorted e = eig(x);
    if (!f_->in_interior(e.values)) throw DomainError(name() + ": gradient outside the domain interior");
    return recompose(e.basis, f_->gradient(e.values));
  }
  Mat hessian(const Vec& x) const override {
    if (!scalar_) return numeric_hessian(*this, x, false);
    EigenSorted e = eig(x);
    if (!f_->in_interior(e.values)) throw DomainError(name() + ": hessian outside the domain interior");
    const ScalarFunction f = *scalar_;
    Mat G = divided_differences(e.values, [&](double t) { return f.d1(t); }, [&](double t) { return f.d2(t); });
    return daleckii_krein(e.basis, G, space().n);
  }
  double conjugate_value(const Vec& y) const override {
    check_shape(y);
    return f_->conjugate_value(eig(y).values);
  }
  bool conjugate_in_interior(const Vec& y) const override {
    if (y.size() != dim() || !y.allFinite()) return false;
    return f_->conjugate_in_interior(eig(y).values);
  }
  Vec conjugate_gradient(const Vec& y) const override {
    check_shape(y);
    EigenSorted e = eig(y);
    if (!f_->conjugate_in_interior(e.values))
      throw DomainError(name() + ": conjugate gradient outside the domain interior");
    return recompose(e.basis, f_->conjugate_gradient(e.values));
  }
  Mat conjugate_hessian(const Vec& y) const override {
    if (!scalar_) return numeric_hessian(*this, y, true);
    EigenSorted e = eig(y);
    const ScalarFunction f = *scalar_;
    Mat G = divided_differences(e.values, [&](double s) { return f.conj_d1(s); },
                                [&](double s) { return f.conj_d2(s); });
    return daleckii_krein(e.basis, G, space().n);
  }
  Vec interior_point() const override {
    Vec lam = f_->interior_point();
    Vec x = Vec::Zero(dim());
    x.head(space().n) = lam;
    return x;
  }

 private:
  EigenSorted eig(const Vec& x) const { return eigen_sorted(unflatten_hermitian(x, space().n)); }
  static Vec recompose(const CMat& V, const Vec& d) {
    CMat m = V * d.cast<Complex>().asDiagonal() * V.adjoint();
    return flatten_hermitian(0.5 * (m + m.adjoint()));
  }

  PotentialPtr f_;
  std::optional<ScalarFunction> scalar_;
};

// ---------------------------------------------------------------------------
// Conjugate view and combinations

class ConjugateView final : public Potential {
 public:
  explicit ConjugateView(PotentialPtr psi) : Potential(psi->space().dual()), psi_(std::move(psi)) {
    if (!psi_->has_conjugate()) throw UnsupportedOperation("conjugate_view: potential has no conjugate");
  }

  PotentialKind kind() const override { return PotentialKind::conjugate_view; }
  std::string name() const override { return "conjugate(" + psi_->name() + ")"; }

  double value(const Vec& y) const override { return psi_->conjugate_value(y); }
  bool in_interior(const Vec& y) const override { return psi_->conjugate_in_interior(y); }
  Vec gradient(const Vec& y) const override { return psi_->conjugate_gradient(y); }
  Mat hessian(const Vec& y) const override { return psi_->conjugate_hessian(y); }
  double conjugate_value(const Vec& x) const override { return psi_->value(x); }
  bool conjugate_in_interior(const Vec& x) const override { return psi_->in_interior(x); }
  Vec conjugate_gradient(const Vec& x) const override { return psi_->gradient(x); }
  Mat conjugate_hessian(const Vec& x) const override { return psi_->hessian(x); }
  PotentialPtr spectral_inner() const override {
    PotentialPtr inner = psi_->spectral_inner();
    return inner ? conjugate_view(inner) : nullptr;
  }
  Vec interior_point() const override { return psi_->gradient(psi_->interior_point()); }

 private:
  PotentialPtr psi_;
};

class CombinationPotential final : public Potential {
 public:
  CombinationPotential(PotentialPtr a, double la, PotentialPtr b, double lb, Vec lin, double c)
      : Potential(a->space()), a_(std::move(a)), b_(std::move(b)), la_(la), lb_(lb), lin_(std::move(lin)), c_(c) {
    if (b_->dim() != dim() || lin_.size() != dim()) throw ShapeError("combination: dimension mismatch");
    if (la_ < 0 || lb_ < 0) throw ValidationError("combination: weights must be nonnegative");
  }

  PotentialKind kind() const override { return PotentialKind::combination; }
  std::string name() const override { return "combination(" + a_->name() + "," + b_->name() + ")"; }
  bool has_conjugate() const override { return false; }

  double value(const Vec& x) const override {
    return la_ * a_->value(x) + lb_ * b_->value(x) + lin_.dot(x) + c_;
  }
  bool in_interior(const Vec& x) const override { return a_->in_interior(x) && b_->in_interior(x); }
  Vec gradient(const Vec& x) const override { return la_ * a_->gradient(x) + lb_ * b_->gradient(x) + lin_; }
  Mat hessian(const Vec& x) const override { return la_ * a_->hessian(x) + lb_ * b_->hessian(x); }
  double conjugate_value(const Vec&) const override { throw UnsupportedOperation("combination: no conjugate"); }
  bool conjugate_in_interior(const Vec&) const override { throw UnsupportedOperation("combination: no conjugate"); }
  Vec conjugate_gradient(const Vec&) const override { throw UnsupportedOperation("combination: no conjugate"); }
  Mat conjugate_hessian(const Vec&) const override { throw UnsupportedOperation("combination: no conjugate"); }
  Vec interior_point() const override { return a_->interior_point(); }

 private:
  PotentialPtr a_, b_;
  double la_, lb_;
  Vec lin_;
  double c_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories

PotentialPtr make_separable(const SpaceDescriptor& space, ScalarFunction f) {
  space.validate();
  if (space.is_matrix()) {
    auto inner = std::make_shared<SeparablePotential>(SpaceDescriptor::vectors(space.n), f);
    return std::make_shared<SpectralPotential>(space, inner);
  }
  return std::make_shared<SeparablePotential>(space, f);
}

PotentialPtr make_power_sum(const SpaceDescriptor& space, double gamma) {
  return make_separable(space, ScalarFunction::power_sum(gamma));
}
PotentialPtr make_kl(const SpaceDescriptor& space) { return make_separable(space, ScalarFunction::kl()); }
PotentialPtr make_burg(const SpaceDescriptor& space) { return make_separable(space, ScalarFunction::burg()); }
PotentialPtr make_fermi_dirac(const SpaceDescriptor& space) {
  return make_separable(space, ScalarFunction::fermi_dirac());
}
PotentialPtr make_alpha(const SpaceDescriptor& space, double alpha) {
  return make_separable(space, ScalarFunction::alpha(alpha));
}

PotentialPtr make_squared_pnorm(const SpaceDescriptor& space, double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("squared_pnorm: gamma must lie in (0, 1)");
  SpaceDescriptor s = space;
  s.norm = space.is_matrix() ? NormSpec::schatten(1.0 / gamma) : NormSpec::lp(1.0 / gamma);
  s.validate();
  return std::make_shared<GaugePotential>(s, Gauge::identity(), PotentialKind::squared_pnorm);
}

PotentialPtr make_quadratic(const SpaceDescriptor& space, const Mat& T) {
  space.validate();
  return std::make_shared<QuadraticPotential>(space, T);
}

PotentialPtr make_gauge_potential(const SpaceDescriptor& space, const Gauge& gauge) {
  space.validate();
  return std::make_shared<GaugePotential>(space, gauge, PotentialKind::gauge);
}

PotentialPtr make_hilbert(const SpaceDescriptor& space) { return make_gauge_potential(space, Gauge::identity()); }

PotentialPtr spectral_lift(const PotentialPtr& f, std::optional<SpaceDescriptor> matrix_space) {
  if (!f) throw ValidationError("spectral_lift: null potential");
  const int n = f->space().n;
  SpaceDescriptor ms;
  if (matrix_space) {
    ms = *matrix_space;
  } else {
    const double p = f->space().norm.family == NormFamily::p_norm ? f->space().norm.p : 2.0;
    ms = SpaceDescriptor::hermitian(n, NormSpec::schatten(p));
  }
  if (!ms.is_matrix() || ms.n != n) throw ShapeError("spectral_lift: matrix space side must equal inner dimension");
  ms.validate();

  // spot-check permutation symmetry at a generic interior point
  Vec base = f->interior_point();
  Vec probe = base;
  for (int i = 0; i < n; ++i) probe[i] = base[i] * (1.0 + 0.05 * (i + 1) / n) + 0.01 * (i + 1) / n;
  if (!f->in_interior(probe)) probe = base;
  const double v0 = f->value(probe);
  Rng rng(0x5eed);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    Vec q(n);
    for (int i = 0; i < n; ++i) q[i] = probe[perm[i]];
    const double v = f->value(q);
    if (std::abs(v - v0) > 1e-10 * std::max(1.0, std::abs(v0)))
      throw ValidationError("spectral_lift: inner potential is not permutation symmetric");
  }
  return std::make_shared<SpectralPotential>(ms, f);
}

PotentialPtr conjugate_view(const PotentialPtr& psi) { return std::make_shared<ConjugateView>(psi); }

PotentialPtr make_combination(const PotentialPtr& psi1, double l1, const PotentialPtr& psi2, double l2, Vec a,
                              double c) {
  return std::make_shared<CombinationPotential>(psi1, l1, psi2, l2, std::move(a), c);
}

}  // namespace bregproj
