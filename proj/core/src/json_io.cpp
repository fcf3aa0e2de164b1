#include "bregproj/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "bregproj/error.hpp"

namespace bregproj {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

const Json& field(const Json& j, const char* key, const char* ctx) {
  if (!j.is_object() || !j.contains(key)) fail(std::string(ctx) + ": missing field \"" + key + "\"");
  return j.at(key);
}

double num(const Json& j, const char* key, const char* ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_number()) fail(std::string(ctx) + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

double num_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(std::string("field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

std::string kind_of(const Json& j, const char* ctx) {
  const Json& k = field(j, "kind", ctx);
  if (!k.is_string()) fail(std::string(ctx) + ": \"kind\" must be a string");
  return k.get<std::string>();
}

Vec vec(const Json& j, const char* ctx) {
  if (!j.is_array()) fail(std::string(ctx) + ": expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(std::string(ctx) + ": expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

// Rows of a JSON matrix.
Mat mat(const Json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) fail(std::string(ctx) + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Vec first = vec(j[0], ctx);
  Mat m(rows, first.size());
  for (Eigen::Index r = 0; r < rows; ++r) {
    Vec row = vec(j[static_cast<std::size_t>(r)], ctx);
    if (row.size() != first.size()) fail(std::string(ctx) + ": ragged matrix");
    m.row(r) = row.transpose();
  }
  return m;
}

// List of vectors, stored as columns.
Mat columns(const Json& j, const char* ctx) { return mat(j, ctx).transpose(); }

void check_dim(const Vec& v, int dim, const char* ctx) {
  if (v.size() != dim)
    throw ShapeError(std::string(ctx) + ": expected " + std::to_string(dim) + " coordinates, got " +
                     std::to_string(v.size()));
}

NormSpec norm_from_json(const Json& j) {
  const std::string fam = field(j, "family", "norm").get<std::string>();
  if (fam == "p" || fam == "lp") return NormSpec::lp(num(j, "p", "norm"));
  if (fam == "schatten" || fam == "schatten_p") return NormSpec::schatten(num(j, "p", "norm"));
  if (fam == "weighted" || fam == "weighted_p")
    return NormSpec::weighted(num(j, "p", "norm"), vec(field(j, "weights", "norm"), "norm.weights"));
  if (fam == "block" || fam == "block_pq")
    return NormSpec::block(num(j, "p", "norm"), num(j, "q", "norm"),
                           static_cast<int>(num(j, "block_size", "norm")));
  fail("unknown norm family \"" + fam + "\"");
}

Json norm_to_json(const NormSpec& n) {
  Json j;
  switch (n.family) {
    case NormFamily::p_norm:
      j = {{"family", "p"}, {"p", number(n.p)}};
      break;
    case NormFamily::schatten_p:
      j = {{"family", "schatten"}, {"p", number(n.p)}};
      break;
    case NormFamily::weighted_p:
      j = {{"family", "weighted"}, {"p", number(n.p)}, {"weights", numbers(n.weights)}};
      break;
    case NormFamily::block_pq:
      j = {{"family", "block"}, {"p", number(n.p)}, {"q", number(n.q)}, {"block_size", n.block_size}};
      break;
  }
  return j;
}

ScalarFunction scalar_from(const std::string& kind, const Json& j) {
  if (kind == "kl") return ScalarFunction::kl();
  if (kind == "burg") return ScalarFunction::burg();
  if (kind == "fermi_dirac") return ScalarFunction::fermi_dirac();
  if (kind == "alpha" || kind == "alpha_family") return ScalarFunction::alpha(num(j, "alpha", "potential"));
  if (kind == "power_sum") return ScalarFunction::power_sum(num(j, "gamma", "potential"));
  fail("potential kind \"" + kind + "\" is not separable");
}

bool is_separable(const std::string& kind) {
  return kind == "kl" || kind == "burg" || kind == "fermi_dirac" || kind == "alpha" || kind == "alpha_family" ||
         kind == "power_sum";
}

// Complex entry from a number or an [re, im] pair.
Complex entry(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  fail("matrix entries must be numbers or [re, im] pairs");
}

}  // namespace

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

SpaceDescriptor space_from_json(const Json& j) {
  const std::string kind = kind_of(j, "space");
  const int n = static_cast<int>(num(j, "n", "space"));
  if (kind == "vector") {
    SpaceDescriptor s = SpaceDescriptor::vectors(n, j.contains("norm") ? norm_from_json(j.at("norm")) : NormSpec::lp(2.0));
    s.validate();
    return s;
  }
  if (kind == "hermitian" || kind == "matrix" || kind == "hermitian_matrix") {
    SpaceDescriptor s =
        SpaceDescriptor::hermitian(n, j.contains("norm") ? norm_from_json(j.at("norm")) : NormSpec::schatten(2.0));
    s.validate();
    return s;
  }
  fail("unknown space kind \"" + kind + "\"");
}

Json to_json(const SpaceDescriptor& space) {
  return {{"kind", space.is_matrix() ? "hermitian" : "vector"}, {"n", space.n}, {"norm", norm_to_json(space.norm)}};
}

Gauge gauge_from_json(const Json& j) {
  const std::string kind = kind_of(j, "gauge");
  if (kind == "power") return Gauge::power(num(j, "alpha", "gauge"), num(j, "beta", "gauge"));
  if (kind == "identity" || kind == "hilbert") return Gauge::identity();
  if (kind == "monomial") return Gauge::monomial(num(j, "r", "gauge"));
  if (kind == "tabulated") {
    const Json& knots = field(j, "knots", "gauge");
    if (!knots.is_array()) fail("gauge: knots must be an array of [t, phi] pairs");
    std::vector<std::pair<double, double>> k;
    for (const auto& p : knots) {
      if (!p.is_array() || p.size() != 2) fail("gauge: knots must be an array of [t, phi] pairs");
      k.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return Gauge::tabulated(std::move(k), num(j, "tail_slope", "gauge"));
  }
  fail("unknown gauge kind \"" + kind + "\"");
}

Json to_json(const Gauge& g) {
  if (g.kind() == Gauge::Kind::power) return {{"kind", "power"}, {"alpha", number(g.alpha())}, {"beta", number(g.beta())}};
  Json knots = Json::array();
  for (const auto& [t, v] : g.graph().vertices()) knots.push_back({number(t), number(v)});
  return {{"kind", "tabulated"}, {"knots", knots}, {"tail_slope", number(g.graph().tail_slope())}};
}

PotentialPtr potential_from_json(const Json& j, const SpaceDescriptor& space) {
  const std::string kind = kind_of(j, "potential");
  if (is_separable(kind)) return make_separable(space, scalar_from(kind, j));
  if (kind == "gauge") return make_gauge_potential(space, gauge_from_json(field(j, "gauge", "potential")));
  if (kind == "hilbert") return make_hilbert(space);
  if (kind == "squared_pnorm") return make_squared_pnorm(space, num(j, "gamma", "potential"));
  if (kind == "quadratic") {
    Mat T = mat(field(j, "T", "potential"), "potential.T");
    if (T.rows() != space.flat_dim() || T.cols() != space.flat_dim())
      throw ShapeError("potential.T must be " + std::to_string(space.flat_dim()) + " x " +
                       std::to_string(space.flat_dim()));
    return make_quadratic(space, T);
  }
  if (kind == "spectral" || kind == "spectral_lift") {
    if (!space.is_matrix()) fail("spectral potentials need a hermitian space");
    const Json& inner = field(j, "inner", "potential");
    PotentialPtr f = potential_from_json(inner, SpaceDescriptor::vectors(space.n));
    return spectral_lift(f, space);
  }
  fail("unknown potential kind \"" + kind + "\"");
}

ConvexSet set_from_json(const Json& j, const SpaceDescriptor& space) {
  const std::string kind = kind_of(j, "set");
  const int d = space.flat_dim();
  ConvexSet K;
  if (kind == "hyperplane" || kind == "halfspace") {
    Vec a = vec(field(j, "a", "set"), "set.a");
    check_dim(a, d, "set.a");
    K = kind == "hyperplane" ? ConvexSet::hyperplane(a, num(j, "b", "set")) : ConvexSet::halfspace(a, num(j, "b", "set"));
  } else if (kind == "affine") {
    Mat A = mat(field(j, "A", "set"), "set.A");
    if (A.cols() != d) throw ShapeError("set.A must have " + std::to_string(d) + " columns");
    Vec b = vec(field(j, "b", "set"), "set.b");
    check_dim(b, static_cast<int>(A.rows()), "set.b");
    K = ConvexSet::affine(A, b);
  } else if (kind == "box") {
    Vec lo = vec(field(j, "lower", "set"), "set.lower");
    Vec hi = vec(field(j, "upper", "set"), "set.upper");
    check_dim(lo, d, "set.lower");
    check_dim(hi, d, "set.upper");
    K = ConvexSet::box(lo, hi);
  } else if (kind == "simplex") {
    K = ConvexSet::simplex(d, num_or(j, "total", num_or(j, "s", 1.0)));
  } else if (kind == "ball" || kind == "norm_ball") {
    Vec c = j.contains("center") ? vec(j.at("center"), "set.center") : Vec(Vec::Zero(d));
    check_dim(c, d, "set.center");
    K = ConvexSet::ball(c, num(j, "radius", "set"));
  } else if (kind == "cone") {
    const std::string cone = j.value("cone", std::string("orthant"));
    if (cone == "orthant") {
      K = ConvexSet::orthant(d, num_or(j, "sign", 1.0));
    } else if (cone == "ray") {
      Vec dir = vec(field(j, "direction", "set"), "set.direction");
      check_dim(dir, d, "set.direction");
      K = ConvexSet::ray(dir);
    } else if (cone == "generated" || cone == "facets" || cone == "subspace") {
      Mat G = columns(field(j, "generators", "set"), "set.generators");
      if (G.rows() != d) throw ShapeError("set.generators must have " + std::to_string(d) + " entries each");
      K = cone == "generated" ? ConvexSet::generated_cone(G)
          : cone == "facets"  ? ConvexSet::facet_cone(G)
                              : ConvexSet::subspace(G);
    } else if (cone == "second_order") {
      K = ConvexSet::second_order_cone(d, num_or(j, "sign", 1.0));
    } else {
      fail("unknown cone \"" + cone + "\"");
    }
  } else if (kind == "psd_trace_slice") {
    if (!space.is_matrix()) fail("psd_trace_slice needs a hermitian space");
    K = ConvexSet::psd_trace_slice(space.n, num_or(j, "trace", num_or(j, "s", 1.0)));
  } else if (kind == "intersection") {
    const Json& parts = field(j, "parts", "set");
    if (!parts.is_array() || parts.empty()) fail("set.parts must be a nonempty array");
    std::vector<ConvexSet> ps;
    for (const auto& p : parts) ps.push_back(set_from_json(p, space));
    K = ConvexSet::intersection(std::move(ps));
  } else {
    fail("unknown set kind \"" + kind + "\"");
  }
  const std::string coords = j.value("coordinates", std::string("primal"));
  if (coords == "dual") {
    K = K.in_dual();
  } else if (coords != "primal") {
    fail("set.coordinates must be \"primal\" or \"dual\"");
  }
  K.validate();
  return K;
}

Embedding embedding_from_json(const Json& j, const SpaceDescriptor& space) {
  const std::string kind = kind_of(j, "embedding");
  if (kind == "identity") return Embedding::identity(space);
  if (kind == "mazur")
    return Embedding::mazur(space, num(j, "g1", "embedding"), num(j, "g2", "embedding"), num_or(j, "lambda", 1.0));
  if (kind == "lozanovskii") return Embedding::lozanovskii(space);
  if (kind == "spin_factor") return Embedding::spin_factor(space);
  fail("unknown embedding kind \"" + kind + "\"");
}

Vec point_from_json(const Json& j, const SpaceDescriptor& space) {
  if (!j.is_array()) fail("point must be an array");
  if (!space.is_matrix()) {
    Vec v = vec(j, "point");
    check_dim(v, space.n, "point");
    require_finite(v, "point");
    return v;
  }
  const std::size_t n = std::size_t(space.n);
  std::vector<Complex> entries;
  if (j.size() == n * n) {
    for (const auto& e : j) entries.push_back(entry(e));
  } else if (j.size() == n) {
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != n) fail("point: matrix rows must have n entries");
      for (const auto& e : row) entries.push_back(entry(e));
    }
  }
  if (entries.size() != std::size_t(space.n * space.n))
    throw ShapeError("point: expected " + std::to_string(space.n * space.n) + " matrix entries");
  CMat m(space.n, space.n);
  for (int r = 0; r < space.n; ++r)
    for (int c = 0; c < space.n; ++c) m(r, c) = entries[std::size_t(r * space.n + c)];
  Vec flat(2 * entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    flat[Eigen::Index(2 * i)] = entries[i].real();
    flat[Eigen::Index(2 * i + 1)] = entries[i].imag();
  }
  require_finite(flat, "point");
  require_hermitian(m);
  return flatten_hermitian(m);
}

Vec point_from_text(const std::string& text, const SpaceDescriptor& space) {
  std::size_t first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') return point_from_json(parse_json(text, "point"), space);
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || tok.find_first_not_of(" \t", std::size_t(end - tok.c_str())) != std::string::npos)
      fail("point: cannot parse \"" + tok + "\" as a number");
    vals.push_back(v);
  }
  Json arr = vals;
  return point_from_json(arr, space);
}

Json point_to_json(const Vec& coords, const SpaceDescriptor& space) {
  if (!space.is_matrix()) return numbers(coords);
  const CMat m = unflatten_hermitian(coords, space.n);
  Json rows = Json::array();
  for (int r = 0; r < space.n; ++r) {
    Json row = Json::array();
    for (int c = 0; c < space.n; ++c) row.push_back({number(m(r, c).real()), number(m(r, c).imag())});
    rows.push_back(row);
  }
  return rows;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  const double r = std::strtod(format_number(v).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json numbers(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

}  // namespace bregproj
