#pragma once

// Declarative closed convex sets on flat coordinates, membership tests and
// exact Euclidean projections.

#include <optional>
#include <string>
#include <vector>

#include "bregproj/random.hpp"
#include "bregproj/spaces.hpp"

namespace bregproj {

enum class SetKind { hyperplane, halfspace, affine, box, simplex, norm_ball, cone, psd_trace_slice, intersection };
enum class Coordinates { primal, dual };
enum class ConeKind {
  orthant,     // sign * x >= 0 componentwise
  generated,   // {G lambda : lambda >= 0}, G with independent columns
  facets,      // {x : G^T x <= 0}, polar of a generated cone
  subspace,    // span of the columns of G
  second_order // {(u, t) : ||u||_2 <= sign * t} with t the last coordinate
};

std::string to_string(SetKind kind);

/// One linear constraint row: <a, x> = b (equality) or <a, x> <= b.
struct LinearRow {
  Vec a;
  double b = 0.0;
  bool equality = false;
};

struct SetWitness {
  Vec point;
  bool interior = false;
};

struct ConvexSet {
  SetKind kind = SetKind::hyperplane;
  Coordinates coordinates = Coordinates::primal;
  int dim = 0;       // flat coordinate count
  int matrix_n = 0;  // psd_trace_slice only

  Vec a;  // hyperplane / halfspace normal
  double b = 0.0;
  Mat A;     // affine rows
  Vec rhs;   // affine right-hand side
  Vec lower, upper;  // box
  double total = 1.0;  // simplex mass / psd trace
  Vec center;          // ball
  double radius = 1.0;
  ConeKind cone = ConeKind::orthant;
  Mat generators;      // columns
  double sign = 1.0;   // orthant / second_order orientation
  std::vector<ConvexSet> parts;

  std::optional<SetWitness> witness;

  static ConvexSet hyperplane(Vec a, double b);
  static ConvexSet halfspace(Vec a, double b);
  static ConvexSet affine(Mat A, Vec rhs);
  static ConvexSet box(Vec lower, Vec upper);
  static ConvexSet simplex(int dim, double total = 1.0);
  /// Euclidean ball in flat coordinates (Frobenius on matrices).
  static ConvexSet ball(Vec center, double radius);
  static ConvexSet orthant(int dim, double sign = 1.0);
  static ConvexSet ray(Vec direction);
  static ConvexSet generated_cone(Mat generators);
  static ConvexSet facet_cone(Mat normals);
  static ConvexSet subspace(Mat basis);
  static ConvexSet second_order_cone(int dim, double sign = 1.0);
  static ConvexSet psd_trace_slice(int n, double trace = 1.0);
  static ConvexSet intersection(std::vector<ConvexSet> parts);

  ConvexSet in_dual() const;

  bool is_cone() const { return kind == SetKind::cone; }
  bool is_affine() const;
  /// Polyhedral description as linear rows, if the set has one.
  std::optional<std::vector<LinearRow>> linear_rows() const;

  void validate() const;
};

bool contains(const ConvexSet& K, const Vec& x, double tol);
bool contains(const ConvexSet& K, const SpacePoint& x, double tol);

/// Maximum constraint violation (0 inside).
double violation(const ConvexSet& K, const Vec& x);

/// Metric projection in flat Euclidean coordinates (ignores `coordinates`).
Vec euclidean_project_coords(const ConvexSet& K, const Vec& x);
/// Primal-coordinate sets only; UnsupportedOperation for dual ones.
SpacePoint euclidean_project(const ConvexSet& K, const SpacePoint& x);

/// Projection onto {x >= 0, sum x = s} by the sorted-threshold rule.
Vec project_simplex(const Vec& x, double s);

/// Polar cone K° (annihilator for subspaces).
ConvexSet polar_cone(const ConvexSet& K);

/// A member of K, preferring a relative-interior point.
SetWitness default_witness(const ConvexSet& K);

/// Random points of K: projections of Gaussian perturbations around `center`.
Vec sample_member(const ConvexSet& K, const Vec& center, double spread, Rng& rng);

}  // namespace bregproj
