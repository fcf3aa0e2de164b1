#pragma once

// The Vainberg-Bregman functional D_Psi, its one-sided variant, the algebraic
// identities, the Psi-angle and the extended functional D_{l,Psi}.

#include <vector>

#include "bregproj/potentials.hpp"

namespace bregproj {

class Embedding;

struct DivergenceValue {
  double value = 0.0;  // raw value, never clipped
  bool left_in_domain = false;
  bool right_in_interior = false;
};

DivergenceValue bregman(const Potential& psi, const SpacePoint& x, const SpacePoint& y);
double bregman(const Potential& psi, const Vec& x, const Vec& y);

/// Psi(x) - Psi(y) - D^+Psi(y; x - y) with the directional derivative taken by
/// Richardson extrapolation over `steps` (default 1e-2 ... 1e-7).
double one_sided_bregman(const Potential& psi, const Vec& x, const Vec& y, std::vector<double> steps = {});

struct IdentityReport {
  double affine_scaling = 0.0;
  double symmetric_sum = 0.0;
  double cosine = 0.0;
  double quadruple = 0.0;
  double dual_swap = 0.0;  // NaN when psi has no conjugate
  double max_residual() const;
};

/// Relative residuals |lhs - rhs| / (1 + max|term|) of the five identities.
/// The affine-scaling check uses l1 psi + l2 (1/2)||.||_2^2 + <shift, .> + 1.
IdentityReport identity_suite(const Potential& psi, const Vec& x, const Vec& y, const Vec& z, const Vec& w, double l1,
                              double l2, const Vec& shift);

struct AngleReport {
  double angle = 0.0;  // arccos of the clamped ratio
  double ratio = 0.0;  // raw ratio before clamping
};

/// arccos(<x-y, grad Psi(z) - grad Psi(y)> / (2 ||x-y|| ||z-y||)), norms of psi's space.
AngleReport psi_angle(const Potential& psi, const Vec& x, const Vec& y, const Vec& z);

/// D_Psi(l(phi), l(psi)). Throws DomainError when a state lies outside l's domain.
DivergenceValue extended_bregman(const Embedding& ell, const Potential& psi, const Vec& phi, const Vec& chi);

}  // namespace bregproj
