#pragma once

// Finite-dimensional model spaces: real vectors and complex Hermitian matrices,
// each equipped with a Gateaux differentiable norm and the real duality pairing.
//
// Hermitian matrices are stored in isometric real coordinates: the n diagonal
// entries followed by sqrt(2)*Re and sqrt(2)*Im of each strict upper entry
// (row-major). The Euclidean dot product of two coordinate vectors is then
// Re tr(x y), so the pairing is the same operation on both space kinds.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>

namespace bregproj {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class NormFamily { p_norm, schatten_p, weighted_p, block_pq };
enum class SpaceKind { vector, hermitian_matrix };

std::string to_string(NormFamily family);
std::string to_string(SpaceKind kind);

struct NormSpec {
  NormFamily family = NormFamily::p_norm;
  double p = 2.0;
  double q = 2.0;      // outer exponent, block_pq only
  Vec weights;         // weighted_p only
  int block_size = 1;  // block_pq only

  static NormSpec lp(double p);
  static NormSpec schatten(double p);
  static NormSpec weighted(double p, Vec weights);
  static NormSpec block(double p, double q, int block_size);

  /// Throws ValidationError unless exponents lie strictly inside (1, inf)
  /// and the auxiliary fields are consistent with `dim` coordinates.
  void validate(int dim) const;
};

bool operator==(const NormSpec& a, const NormSpec& b);

/// Conjugate exponent p' with 1/p + 1/p' = 1.
double conjugate_exponent(double p);

/// Norm of the dual space under the pairing.
NormSpec dual_norm_spec(const NormSpec& spec);

struct SpaceDescriptor {
  SpaceKind kind = SpaceKind::vector;
  int n = 1;
  NormSpec norm;

  static SpaceDescriptor vectors(int n, NormSpec norm = NormSpec::lp(2.0));
  static SpaceDescriptor hermitian(int n, NormSpec norm = NormSpec::schatten(2.0));

  /// Number of real coordinates (n for vectors, n*n for matrices).
  int flat_dim() const { return kind == SpaceKind::vector ? n : n * n; }
  bool is_matrix() const { return kind == SpaceKind::hermitian_matrix; }

  /// Same coordinates, dual norm.
  SpaceDescriptor dual() const;

  void validate() const;
};

bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b);

// Hermitian <-> real coordinate conversions.
Vec flatten_hermitian(const CMat& x);
CMat unflatten_hermitian(const Eigen::Ref<const Vec>& coords, int n);

/// Throws ValidationError if `x` is not Hermitian to within 1e-12 of its norm.
void require_hermitian(const CMat& x);

class SpacePoint {
 public:
  SpacePoint() = default;
  SpacePoint(SpaceDescriptor space, Vec coords);

  static SpacePoint vector(const SpaceDescriptor& space, Vec values);
  static SpacePoint matrix(const SpaceDescriptor& space, const CMat& values);

  const SpaceDescriptor& space() const { return space_; }
  const Vec& coords() const { return coords_; }
  CMat matrix() const;

 private:
  SpaceDescriptor space_;
  Vec coords_;
};

/// <x, y> for x in the space and y in dual coordinates (Sum x_i y_i or Re tr(xy)).
double pairing(const SpacePoint& x, const SpacePoint& y);
double pairing(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& y);

double norm(const SpaceDescriptor& space, const Eigen::Ref<const Vec>& x);
double norm(const SpacePoint& x);
/// Norm of `y` taken in the dual space.
double dual_norm(const SpaceDescriptor& space, const Eigen::Ref<const Vec>& y);

/// Gateaux derivative of the norm at x != 0 (dual coordinates): the unique
/// g with <x, g> = ||x|| and ||g||_* = 1. Returns zero at x = 0.
Vec norm_gradient(const SpaceDescriptor& space, const Eigen::Ref<const Vec>& x);

struct EigenSorted {
  Vec values;  // nonincreasing
  CMat basis;  // columns are eigenvectors
};

EigenSorted eigen_sorted(const CMat& x);
EigenSorted eigen_sorted(const SpacePoint& x);

/// u * diag(f(lambda)) * u^* for Hermitian x.
CMat spectral_apply(const CMat& x, const std::function<double(double)>& f);
CMat spectral_apply(const EigenSorted& eig, const std::function<double(double)>& f);

struct PolarParts {
  // Matrix inputs: sign = u_x (partial isometry, +-1 on the support, 0 off it),
  // modulus = |x|. Vector inputs: diagonal matrices of sgn(x_i) and |x_i|.
  CMat sign;
  CMat modulus;
  Vec sign_values;     // per-eigenvalue (or per-coordinate) sign in {-1, 0, 1}
  Vec modulus_values;  // |lambda_i| (or |x_i|)
  CMat basis;          // eigenbasis (identity for vectors)
};

PolarParts polar_decompose(const SpacePoint& x);
PolarParts polar_decompose(const CMat& x);

/// u_x |x|^r, the signed power used by Mazur and duality maps.
CMat signed_power(const CMat& x, double r);
Vec signed_power(const Eigen::Ref<const Vec>& x, double r);

/// Throws ValidationError if any coordinate is NaN or infinite.
void require_finite(const Eigen::Ref<const Vec>& x, const char* what);

}  // namespace bregproj
