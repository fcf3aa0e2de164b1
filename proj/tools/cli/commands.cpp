#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <bregproj/divergence.hpp>
#include <bregproj/error.hpp>
#include <bregproj/metrology.hpp>
#include <bregproj/operators.hpp>
#include <bregproj/projections.hpp>

#include "suites.hpp"

namespace bregproj::cli {

namespace {

struct Args {
  std::string space, potential, embedding, set, sets, f, map, gauge;
  std::string x, y, z;
  std::string side = "left";
  std::string mode = "naive_cyclic";
  std::string op = "project";
  std::string what;
  std::string suite, case_name;
  std::string out, format = "json";
  std::vector<double> t;
  double tol = 0.0, lambda = 1.0, r = 2.0, effort = 1.0;
  int sweeps = 500, samples = 200, verify_probes = 0, budget = 2000;
  bool identities = false;
  std::uint64_t seed = 7;
};

// Everything a command needs after parsing, plus the echo for the report.
struct Problem {
  SpaceDescriptor space;
  std::optional<Embedding> ell;
  PotentialPtr psi;
  Json spec = Json::object();

  const SpaceDescriptor& target() const { return ell ? ell->target() : space; }
  Vec point(const std::string& text, const char* name) const {
    if (text.empty()) throw ValidationError(std::string("missing --") + name);
    return point_from_text(text, space);
  }
};

Json resolved_space(const Args& a) {
  if (!a.space.empty()) return parse_json(a.space, "--space");
  // Default: Euclidean vectors sized by the first point given.
  const std::string& probe = !a.x.empty() ? a.x : !a.y.empty() ? a.y : a.z;
  if (probe.empty()) throw ValidationError("missing --space");
  Json arr;
  if (!probe.empty() && probe.front() == '[') {
    arr = parse_json(probe, "point");
  } else {
    arr = parse_json("[" + probe + "]", "point");
  }
  return Json{{"kind", "vector"}, {"n", arr.size()}, {"norm", {{"family", "p"}, {"p", 2}}}};
}

Problem problem(const Args& a, bool need_potential = true) {
  Problem p;
  const Json sj = resolved_space(a);
  p.space = space_from_json(sj);
  p.spec["space"] = to_json(p.space);
  if (!a.embedding.empty()) {
    const Json ej = parse_json(a.embedding, "--embedding");
    p.ell = embedding_from_json(ej, p.space);
    p.space = p.ell->source();
    p.spec["embedding"] = ej;
  }
  if (need_potential) {
    if (a.potential.empty()) throw ValidationError("missing --potential");
    const Json pj = parse_json(a.potential, "--potential");
    p.psi = potential_from_json(pj, p.target());
    p.spec["potential"] = pj;
  }
  p.spec["seed"] = a.seed;
  p.spec["tol"] = number(a.tol);
  return p;
}

Side side_of(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw ValidationError("--side must be left or right");
}

Mat matrix_of(const Json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError(std::string(what) + " must be a list of rows");
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j[0].size()) throw ValidationError(std::string(what) + " rows differ in length");
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      if (!j[i][k].is_number()) throw ValidationError(std::string(what) + " entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
  }
  return m;
}

MonotoneMap map_from_json(const Json& j, const SpaceDescriptor& space) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("--map needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const int d = space.flat_dim();
  auto square = [&](const Mat& m) {
    if (m.rows() != d || m.cols() != d) throw ShapeError("--map.M must be " + std::to_string(d) + " x " + std::to_string(d));
    return m;
  };
  if (kind == "linear") return MonotoneMap::linear(square(matrix_of(j.at("M"), "--map.M")));
  if (kind == "affine") {
    if (!j.contains("c")) throw ValidationError("affine --map needs \"c\"");
    const Vec c = point_from_json(j.at("c"), space);
    return MonotoneMap::affine(square(matrix_of(j.at("M"), "--map.M")), c);
  }
  if (kind == "gradient") return MonotoneMap::gradient_of(potential_from_json(j.at("potential"), space));
  if (kind == "normal_cone") return MonotoneMap::subdifferential_of_indicator(set_from_json(j.at("set"), space));
  throw ValidationError("unknown map kind \"" + kind + "\"");
}

Json projection_json(const ProjectionResult& r, const SpaceDescriptor& space) {
  return {{"point", point_to_json(r.point, space)},
          {"dual_point", point_to_json(r.dual_point, space)},
          {"objective", number(r.objective)},
          {"variational_residual", number(r.variational_residual)},
          {"multipliers", numbers(r.multipliers)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"method", r.method}};
}

Json operator_json(const OperatorResult& r, const SpaceDescriptor& space) {
  return {{"point", point_to_json(r.point, space)},
          {"residual", number(r.residual)},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

// Interior points scattered around the potential's reference point.
std::vector<Vec> interior_samples(const Potential& psi, int count, std::uint64_t seed) {
  std::vector<Vec> xs;
  const Vec c = psi.interior_point();
  for (int i = 0; static_cast<int>(xs.size()) < count && i < 50 * count; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    const Vec x = c + 0.5 * rng.normal_vec(static_cast<int>(c.size()));
    if (psi.in_interior(x)) xs.push_back(x);
  }
  return xs;
}

struct Outcome {
  Json result;
  int code = ok;
  std::string csv;  // overrides the generic flattening when set
};

Outcome cmd_div(const Args& a, Problem& p) {
  const Vec x = p.point(a.x, "x"), y = p.point(a.y, "y");
  Outcome o;
  if (p.ell) {
    const DivergenceValue d = extended_bregman(*p.ell, *p.psi, x, y);
    o.result = {{"value", number(d.value)}, {"left_in_domain", d.left_in_domain}, {"right_in_interior", d.right_in_interior}};
    return o;
  }
  const DivergenceValue d = bregman(*p.psi, SpacePoint::vector(p.space, x), SpacePoint::vector(p.space, y));
  o.result = {{"value", number(d.value)}, {"left_in_domain", d.left_in_domain}, {"right_in_interior", d.right_in_interior}};
  if (a.identities) {
    const Vec z = p.point(a.z, "z");
    const IdentityReport r = identity_suite(*p.psi, x, y, z, z, 1.0, 1.0, Vec::Zero(x.size()));
    o.result["identities"] = {{"affine_scaling", number(r.affine_scaling)}, {"symmetric_sum", number(r.symmetric_sum)},
                              {"cosine", number(r.cosine)}, {"quadruple", number(r.quadruple)},
                              {"dual_swap", number(r.dual_swap)}};
  }
  return o;
}

Outcome cmd_project(const Args& a, Problem& p) {
  if (a.set.empty()) throw ValidationError("missing --set");
  const Json kj = parse_json(a.set, "--set");
  const ConvexSet K = set_from_json(kj, p.target());
  p.spec["set"] = kj;
  p.spec["side"] = a.side;
  const Side side = side_of(a.side);
  const Vec y = p.point(a.y, "y");
  ProjectionOptions opt;
  opt.tol = a.tol;
  opt.seed = a.seed;
  const ProjectionResult r = p.ell ? pullback_project(*p.ell, p.psi, K, side, y, opt)
                             : side == Side::left ? left_project(p.psi, K, y, opt)
                                                  : right_project(p.psi, K, y, opt);
  Outcome o;
  o.result = projection_json(r, p.space);
  if (a.verify_probes > 0) {
    if (p.ell) throw ValidationError("--verify-pythagorean is not available with --embedding");
    const PythagoreanReport v = verify_pythagorean(p.psi, K, y, side, a.verify_probes, a.seed, a.tol);
    o.result["pythagorean"] = {{"probes", a.verify_probes},
                               {"min_residual", number(v.min_residual)},
                               {"max_abs_residual", number(v.max_abs_residual)},
                               {"equality_expected", v.equality_expected},
                               {"passed", v.passed}};
    if (!v.passed) o.code = assertion_failed;
  }
  return o;
}

Outcome cmd_prox(const Args& a, Problem& p) {
  const Side side = side_of(a.side);
  const Vec y = p.point(a.y, "y");
  p.spec["lambda"] = number(a.lambda);
  p.spec["side"] = a.side;
  OperatorResult r;
  if (!a.f.empty()) {
    const Json fj = parse_json(a.f, "--f");
    p.spec["f"] = fj;
    const PotentialPtr f = potential_from_json(fj, p.space);
    r = side == Side::left ? left_prox(p.psi, f, a.lambda, y, a.tol) : right_prox(p.psi, f, a.lambda, y, a.tol);
  } else if (!a.set.empty()) {
    const Json kj = parse_json(a.set, "--set");
    p.spec["set"] = kj;
    const ConvexSet K = set_from_json(kj, p.space);
    r = side == Side::left ? left_prox(p.psi, K, a.lambda, y, a.tol) : right_prox(p.psi, K, a.lambda, y, a.tol);
  } else {
    throw ValidationError("prox needs --f or --set");
  }
  return {operator_json(r, p.space)};
}

Outcome cmd_resolve(const Args& a, Problem& p) {
  if (a.map.empty()) throw ValidationError("missing --map");
  const Json mj = parse_json(a.map, "--map");
  p.spec["map"] = mj;
  p.spec["lambda"] = number(a.lambda);
  p.spec["side"] = a.side;
  const MonotoneMap T = map_from_json(mj, p.space);
  const Side side = side_of(a.side);
  const Vec x = p.point(a.x, "x");
  const OperatorResult r = side == Side::left ? left_resolvent(p.psi, T, a.lambda, x, a.tol)
                                              : right_resolvent(p.psi, T, a.lambda, x, a.tol);
  return {operator_json(r, p.space)};
}

Outcome cmd_iterate(const Args& a, Problem& p) {
  if (a.sets.empty()) throw ValidationError("missing --sets");
  const Json sj = parse_json(a.sets, "--sets");
  if (!sj.is_array() || sj.empty()) throw ValidationError("--sets must be a non-empty JSON array");
  std::vector<ConvexSet> sets;
  for (const auto& s : sj) sets.push_back(set_from_json(s, p.space));
  p.spec["sets"] = sj;
  p.spec["mode"] = a.mode;
  p.spec["sweeps"] = a.sweeps;
  CyclicMode mode;
  if (a.mode == "naive_cyclic" || a.mode == "naive") mode = CyclicMode::naive_cyclic;
  else if (a.mode == "dykstra_hilbert" || a.mode == "dykstra") mode = CyclicMode::dykstra_hilbert;
  else throw ValidationError("--mode must be naive_cyclic or dykstra_hilbert");
  const Vec y = p.point(a.y, "y");
  std::optional<Vec> target;
  if (!a.z.empty()) target = p.point(a.z, "z");
  const IterationTrace tr = cyclic_project(p.psi, sets, y, mode, a.sweeps, a.tol > 0 ? a.tol : 1e-10, target);
  Outcome o;
  Json steps = Json::array();
  for (std::size_t k = 0; k < tr.points.size(); ++k) steps.push_back(numbers(tr.points[k]));
  o.result = {{"point", point_to_json(tr.last(), p.space)},
              {"sweeps", tr.sweeps},
              {"converged", tr.converged},
              {"stop_reason", tr.stop_reason},
              {"step_norms", numbers(Eigen::Map<const Vec>(tr.step_norms.data(), static_cast<Eigen::Index>(tr.step_norms.size())))},
              {"trace", steps}};
  if (target)
    o.result["divergence_to_z"] = numbers(Eigen::Map<const Vec>(tr.divergence_to_target.data(),
                                                                static_cast<Eigen::Index>(tr.divergence_to_target.size())));
  o.csv = tr.csv();
  return o;
}

Outcome cmd_certify(const Args& a, Problem& p) {
  p.spec["operator"] = a.op;
  p.spec["samples"] = a.samples;
  std::function<Vec(const Vec&)> T;
  std::vector<Vec> fixed;
  if (a.op == "project") {
    if (a.set.empty()) throw ValidationError("missing --set");
    const Json kj = parse_json(a.set, "--set");
    p.spec["set"] = kj;
    const ConvexSet K = set_from_json(kj, p.space);
    ProjectionOptions opt;
    opt.tol = a.tol > 0 ? a.tol : 1e-12;
    T = [psi = p.psi, K, opt](const Vec& x) { return left_project(psi, K, x, opt).point; };
    Rng rng(a.seed);
    const SetWitness w = default_witness(K);
    for (int i = 0; i < 20; ++i) {
      const Vec m = sample_member(K, w.point, 1.0, rng);
      if (p.psi->in_interior(m)) fixed.push_back(m);
    }
  } else if (a.op == "resolve") {
    if (a.map.empty()) throw ValidationError("missing --map");
    const Json mj = parse_json(a.map, "--map");
    p.spec["map"] = mj;
    p.spec["lambda"] = number(a.lambda);
    const MonotoneMap M = map_from_json(mj, p.space);
    T = [psi = p.psi, M, lam = a.lambda, tol = a.tol > 0 ? a.tol : 1e-13](const Vec& x) {
      return left_resolvent(psi, M, lam, x, tol).point;
    };
    fixed.push_back(p.point(a.z, "z (a zero of the map)"));
  } else {
    throw ValidationError("--operator must be project or resolve");
  }
  const QuasinonexpansiveReport r = certify_quasinonexpansive(p.psi, T, fixed, interior_samples(*p.psi, a.samples, a.seed));
  Outcome o;
  o.result = {{"left_sq", number(r.left_sq)},
              {"right_sq", number(r.right_sq)},
              {"left_firm", number(r.left_firm)},
              {"fixed_point_error", number(r.fixed_point_error)},
              {"fixed_points", fixed.size()},
              {"pairs", r.pairs},
              {"is_left_sq", r.is_left_sq()},
              {"is_left_firm", r.is_left_firm()}};
  if (!r.is_left_sq() || r.fixed_point_error > 1e-8) o.code = assertion_failed;
  return o;
}

Outcome cmd_measure(const Args& a, Json& spec) {
  spec["what"] = a.what;
  spec["seed"] = a.seed;
  Outcome o;
  if (a.what == "holder") {
    suites::Options opt;
    opt.seed = a.seed;
    opt.case_name = a.case_name;
    opt.effort = a.effort;
    const suites::Report rep = suites::run_suite("holder", opt);
    o.result = rep.to_json();
    o.csv = rep.csv();
    o.code = rep.passed() ? ok : assertion_failed;
    return o;
  }
  Problem p = problem(a, a.what == "total-convexity" || a.what == "gradient-check");
  spec.update(p.spec);
  if (a.what == "moduli") {
    spec["budget"] = a.budget;
    const ModulusReport m = convexity_smoothness_moduli(p.space, a.t, a.budget, a.seed);
    o.result = {{"eps", m.eps}, {"delta", m.delta}, {"rho", m.rho},
                {"delta_exponent", number(m.delta_fit.exponent)}, {"rho_exponent", number(m.rho_fit.exponent)}};
    for (auto* key : {"eps", "delta", "rho"}) {
      Json rounded = Json::array();
      for (double v : o.result[key]) rounded.push_back(number(v));
      o.result[key] = rounded;
    }
  } else if (a.what == "monotonicity") {
    if (a.gauge.empty()) throw ValidationError("missing --gauge");
    const Json gj = parse_json(a.gauge, "--gauge");
    spec["gauge"] = gj;
    spec["r"] = number(a.r);
    const MonotonicityReport m = monotonicity_strength(p.space, gauge_from_json(gj), a.r, a.samples, a.seed);
    o.result = {{"fitted_c", number(m.fitted_c)}, {"worst_slack", number(m.worst_slack)}, {"samples", m.samples}};
  } else if (a.what == "total-convexity") {
    const Vec x = p.point(a.x, "x");
    const std::vector<double> t = a.t.empty() ? std::vector<double>{0.1, 0.5, 1.0} : a.t;
    const TotalConvexityReport m = total_convexity_modulus(*p.psi, x, t, a.budget, a.seed);
    Json nu = Json::array(), tt = Json::array();
    for (std::size_t k = 0; k < m.t.size(); ++k) {
      tt.push_back(number(m.t[k]));
      nu.push_back(number(m.nu[k]));
    }
    o.result = {{"t", tt}, {"nu", nu}};
  } else if (a.what == "gradient-check") {
    const Vec x = p.point(a.x, "x");
    o.result = {{"gradient_fd_rel", number(gradient_check(*p.psi, {x}))},
                {"conjugate_gradient_fd_rel", number(gradient_check(*p.psi, {p.psi->gradient(x)}, {}, true))}};
  } else {
    throw ValidationError("--what must be one of holder, moduli, monotonicity, total-convexity, gradient-check");
  }
  return o;
}

Outcome cmd_verify(const Args& a, Json& spec, std::ostream& err) {
  std::vector<std::string> names;
  if (a.suite == "all") names = suites::suite_names();
  else if (suites::has_suite(a.suite)) names = {a.suite};
  else throw ValidationError("unknown suite \"" + a.suite + "\"");
  spec["suite"] = a.suite;
  spec["seed"] = a.seed;
  if (!a.case_name.empty()) spec["case"] = a.case_name;
  if (a.effort != 1.0) spec["effort"] = number(a.effort);
  suites::Options opt;
  opt.seed = a.seed;
  opt.case_name = a.case_name;
  opt.effort = a.effort;
  Outcome o;
  Json reports = Json::array();
  for (const auto& name : names) {
    const suites::Report rep = suites::run_suite(name, opt);
    reports.push_back(rep.to_json());
    o.csv += o.csv.empty() ? rep.csv() : rep.csv().substr(rep.csv().find('\n') + 1);
    for (const suites::Row* r : rep.failures()) {
      err << "FAIL " << name << ' ' << r->group << ' ' << r->name << " = " << format_number(r->value)
          << (r->bound == suites::Bound::at_most ? " > " : " < ") << format_number(r->threshold) << '\n';
      o.code = assertion_failed;
    }
  }
  o.result = {{"passed", o.code == ok}, {"suites", reports}};
  return o;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array() && !j.empty() && (j[0].is_array() || j[0].is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else if (j.is_array()) {
    os << prefix << ',';
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ";" : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    os << '\n';
  } else {
    os << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bregman divergence geometry toolkit", "bregproj"};
  app.set_version_flag("--version", std::string(BREGPROJ_VERSION));
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* s, bool points) {
    s->add_option("--space", a.space, "space JSON");
    s->add_option("--potential", a.potential, "potential JSON");
    s->add_option("--embedding", a.embedding, "embedding JSON");
    s->add_option("--tol", a.tol, "solver tolerance (0 = default)");
    s->add_option("--seed", a.seed, "random seed");
    s->add_option("--out", a.out, "write the report to a file");
    s->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    if (points) {
      s->add_option("--x", a.x, "point");
      s->add_option("--y", a.y, "point");
      s->add_option("--z", a.z, "point");
    }
  };
  auto* div = app.add_subcommand("div", "Bregman divergence D(x, y)");
  common(div, true);
  div->add_flag("--identities", a.identities, "also report identity residuals at (x, y, z)");

  auto* project = app.add_subcommand("project", "left or right Bregman projection of y");
  common(project, true);
  project->add_option("--set", a.set, "set JSON");
  project->add_option("--side", a.side, "left or right");
  project->add_option("--verify-pythagorean", a.verify_probes, "probe count for the pythagorean certificate");

  auto* prox = app.add_subcommand("prox", "proximal map of f or of a set indicator");
  common(prox, true);
  prox->add_option("--f", a.f, "function JSON (potential syntax)");
  prox->add_option("--set", a.set, "set JSON");
  prox->add_option("--lambda", a.lambda, "weight of the divergence term");
  prox->add_option("--side", a.side, "left or right");

  auto* resolve = app.add_subcommand("resolve", "resolvent of a monotone map at x");
  common(resolve, true);
  resolve->add_option("--map", a.map, "map JSON: linear, affine, gradient or normal_cone");
  resolve->add_option("--lambda", a.lambda, "resolvent parameter");
  resolve->add_option("--side", a.side, "left or right");

  auto* iterate = app.add_subcommand("iterate", "cyclic projections onto a list of sets");
  common(iterate, true);
  iterate->add_option("--sets", a.sets, "JSON array of sets");
  iterate->add_option("--mode", a.mode, "naive_cyclic or dykstra_hilbert");
  iterate->add_option("--sweeps", a.sweeps, "maximum sweeps");

  auto* certify = app.add_subcommand("certify", "empirical quasinonexpansivity certificate");
  common(certify, true);
  certify->add_option("--operator", a.op, "project or resolve");
  certify->add_option("--set", a.set, "set JSON");
  certify->add_option("--map", a.map, "map JSON");
  certify->add_option("--lambda", a.lambda, "resolvent parameter");
  certify->add_option("--samples", a.samples, "sample count");

  auto* measure = app.add_subcommand("measure", "metrology: moduli, monotonicity, Holder ratios");
  common(measure, true);
  measure->add_option("--what", a.what, "holder, moduli, monotonicity, total-convexity, gradient-check")->required();
  measure->add_option("--case", a.case_name, "holder case");
  measure->add_option("--gauge", a.gauge, "gauge JSON");
  measure->add_option("--r", a.r, "monotonicity exponent");
  measure->add_option("--t", a.t, "eps or t grid");
  measure->add_option("--samples", a.samples, "sample count");
  measure->add_option("--budget", a.budget, "search budget");
  measure->add_option("--effort", a.effort, "sample scale for holder");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify, false);
  verify->add_option("suite", a.suite, "suite name or all")->required();
  verify->add_option("--case", a.case_name, "case selector");
  verify->add_option("--effort", a.effort, "sample scale (1 = acceptance sizes)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_error;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  Json spec = Json::object();
  Outcome o;
  try {
    if (name == "verify") {
      o = cmd_verify(a, spec, err);
    } else if (name == "measure") {
      o = cmd_measure(a, spec);
    } else {
      Problem p = problem(a);
      for (const char* key : {"x", "y", "z"}) {
        const std::string& text = key[0] == 'x' ? a.x : key[0] == 'y' ? a.y : a.z;
        if (!text.empty()) p.spec[key] = point_to_json(point_from_text(text, p.space), p.space);
      }
      if (name == "div") o = cmd_div(a, p);
      else if (name == "project") o = cmd_project(a, p);
      else if (name == "prox") o = cmd_prox(a, p);
      else if (name == "resolve") o = cmd_resolve(a, p);
      else if (name == "iterate") o = cmd_iterate(a, p);
      else o = cmd_certify(a, p);
      spec = p.spec;
    }
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return infeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  Json report = {{"command", name}, {"version", BREGPROJ_VERSION}, {"spec", spec}, {"result", o.result},
                 {"exit_code", o.code}};
  std::ostringstream text;
  if (a.format == "csv") {
    if (!o.csv.empty()) text << o.csv;
    else {
      text << "key,value\n";
      flatten(Json{{"command", name}, {"version", BREGPROJ_VERSION}, {"result", o.result}}, "", text);
    }
  } else {
    text << report.dump(2) << '\n';
  }
  if (a.out.empty()) {
    out << text.str();
  } else {
    std::ofstream f(a.out);
    if (!f) {
      err << "error: cannot write " << a.out << '\n';
      return usage_error;
    }
    f << text.str();
  }
  return o.code;
}

}  // namespace bregproj::cli
