#pragma once

// Nonlinear coordinate maps between state spaces and Banach spaces: Mazur
// maps, the Lozanovskii factorization, the spin-factor base map, and D_gamma.

#include <string>
#include <vector>

#include "bregproj/divergence.hpp"
#include "bregproj/projections.hpp"
#include "bregproj/random.hpp"

namespace bregproj {

enum class EmbeddingKind { identity, mazur, lozanovskii, spin_factor };
std::string to_string(EmbeddingKind kind);

/// Signed power u_x |x|^{g2/g1} (flat coordinates of `space`), times `scale`.
Vec mazur(const SpaceDescriptor& space, double g1, double g2, const Vec& x, double scale = 1.0);
SpacePoint mazur(double g1, double g2, const SpacePoint& x, double scale = 1.0);

class Embedding {
 public:
  static Embedding identity(SpaceDescriptor space);
  /// State space `source`; image space carries the Schatten/l_p norm 1/g2.
  static Embedding mazur(SpaceDescriptor source, double g1, double g2, double scale = 1.0);
  /// From the positive part of the L1 sphere (and its cone extension) onto S(X)+.
  static Embedding lozanovskii(SpaceDescriptor target);
  /// From the base {(x, 1) : ||x|| <= 1} of X + R onto the unit ball of X.
  static Embedding spin_factor(SpaceDescriptor inner);

  EmbeddingKind kind() const { return kind_; }
  const SpaceDescriptor& source() const { return source_; }
  const SpaceDescriptor& target() const { return target_; }
  int source_dim() const;
  double g1() const { return g1_; }
  double g2() const { return g2_; }
  double scale() const { return scale_; }
  /// Claimed Lipschitz-Holder exponent on the declared domain (NaN if none).
  double holder_exponent() const;
  std::string domain() const;

  bool in_domain(const Vec& phi) const;
  /// Throws DomainError outside the declared domain.
  Vec forward(const Vec& phi) const;
  Vec inverse(const Vec& x) const;

 private:
  EmbeddingKind kind_ = EmbeddingKind::identity;
  SpaceDescriptor source_, target_;
  double g1_ = 1.0, g2_ = 1.0, scale_ = 1.0;
};

/// ||phi||_1/(1-g) + ||psi||_1/g - Re tr(l_g(phi) l_{1-g}(psi)) / (g(1-g)).
double d_gamma(const SpaceDescriptor& space, const Vec& phi, const Vec& psi, double gamma);
/// The same quantity as extended_bregman(l_gamma, Psi_{phi_{gamma(1-gamma),gamma}}).
double d_gamma_composed(const SpaceDescriptor& space, const Vec& phi, const Vec& psi, double gamma);

/// |j(x)| x for x on the unit sphere of X (precondition error off the sphere).
Vec lozanovskii_inverse(const SpaceDescriptor& X, const Vec& x);

struct LozanovskiiResult {
  Vec point;
  double residual = 0.0;  // ||lozanovskii_inverse(point) - z||_1
  bool converged = false;
};

/// y in S(X)+ with |j(y)| y = z for z >= 0, ||z||_1 = 1; cone extension ||z||_1 l(z/||z||_1).
LozanovskiiResult lozanovskii_forward(const SpaceDescriptor& X, const Vec& z, double tol = 1e-10);

struct SpinFactorPoint {
  Vec x;
  double lambda = 1.0;
  bool positive(const SpaceDescriptor& inner) const;  // lambda >= ||x||
  double norm(const SpaceDescriptor& inner) const;    // max(|lambda|, ||x||)
};

/// (x, 1) -> x on the base; precondition error for lambda != 1 or ||x|| > 1.
Vec spin_embed(const SpaceDescriptor& inner, const SpinFactorPoint& v);
SpinFactorPoint spin_lift(const Vec& x);

/// l^{-1} o LP_{l(C)} o l (left) or l^{-1} o RP_{l(C)} o l (right), with C
/// given by its image `image_set`.
ProjectionResult pullback_project(const Embedding& ell, const PotentialPtr& psi, const ConvexSet& image_set, Side side,
                                  const Vec& phi, ProjectionOptions opt = {});

/// Completely positive trace preserving map in Kraus form.
struct CptpMap {
  std::vector<CMat> kraus;
  CMat apply(const CMat& rho) const;
  /// max |sum K^* K - I|
  double trace_preservation_error() const;
};

/// Kraus operators from a Haar-random isometry C^n -> C^n (x) C^m.
CptpMap random_cptp(int n, int kraus_count, Rng& rng);

}  // namespace bregproj
