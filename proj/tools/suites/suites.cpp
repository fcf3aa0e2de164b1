#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <bregproj/gauges.hpp>

#include "common.hpp"

namespace bregproj::suites {

Row& Report::check(std::string group, std::string name, double value, Bound bound, double threshold,
                   std::string note) {
  Row r;
  r.group = std::move(group);
  r.name = std::move(name);
  r.value = value;
  r.bound = bound;
  r.threshold = threshold;
  r.note = std::move(note);
  r.passed = !std::isnan(value) && (bound == Bound::at_most ? value <= threshold : value >= threshold);
  rows.push_back(std::move(r));
  return rows.back();
}

Row& Report::info(std::string group, std::string name, double value, std::string note) {
  Row r;
  r.group = std::move(group);
  r.name = std::move(name);
  r.value = value;
  r.threshold = NAN;
  r.gating = false;
  r.note = std::move(note);
  rows.push_back(std::move(r));
  return rows.back();
}

void Report::merge(const Report& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }

bool Report::passed() const { return failures().empty(); }

std::vector<const Row*> Report::failures() const {
  std::vector<const Row*> out;
  for (const auto& r : rows)
    if (r.gating && !r.passed) out.push_back(&r);
  return out;
}

Json Report::to_json() const {
  Json rs = Json::array();
  for (const auto& r : rows) {
    Json j = {{"group", r.group}, {"name", r.name}, {"value", number(r.value)}, {"gating", r.gating}};
    if (r.gating) {
      j["bound"] = r.bound == Bound::at_most ? "<=" : ">=";
      j["threshold"] = number(r.threshold);
      j["passed"] = r.passed;
    }
    if (!r.note.empty()) j["note"] = r.note;
    rs.push_back(j);
  }
  Json j = {{"suite", suite}, {"seed", seed}, {"passed", passed()}, {"rows", rs}};
  if (!case_name.empty()) j["case"] = case_name;
  return j;
}

std::string Report::csv() const {
  std::ostringstream os;
  os << "suite,group,name,value,bound,threshold,gating,passed,note\n";
  for (const auto& r : rows) {
    os << suite << ',' << r.group << ',' << r.name << ',' << format_number(r.value) << ','
       << (r.gating ? (r.bound == Bound::at_most ? "<=" : ">=") : "") << ','
       << (r.gating ? format_number(r.threshold) : "") << ',' << (r.gating ? "1" : "0") << ','
       << (r.passed ? "1" : "0") << ',' << r.note << '\n';
  }
  return os.str();
}

namespace {

const std::map<std::string, Report (*)(const Options&)>& registry() {
  static const std::map<std::string, Report (*)(const Options&)> r = {
      {"conjugacy", &conjugacy},   {"identities", &identities}, {"pythagorean", &pythagorean},
      {"oracle", &oracle},         {"alber", &alber},           {"cyclic", &cyclic},
      {"operators", &operators},   {"spectral", &spectral},     {"embeddings", &embeddings},
      {"holder", &holder},         {"moduli", &moduli},         {"quasigauge", &quasigauge}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"conjugacy", "identities", "pythagorean", "oracle",
                                                 "alber",     "cyclic",     "operators",   "spectral",
                                                 "embeddings", "holder",    "moduli",      "quasigauge"};
  return names;
}

bool has_suite(const std::string& name) { return registry().count(name) > 0; }

Report run_suite(const std::string& name, const Options& opt) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite \"" + name + "\"");
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = it->second(opt);
  rep.suite = name;
  rep.seed = opt.seed;
  rep.case_name = opt.case_name;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace detail {

std::string space_label(const SpaceDescriptor& s) {
  std::ostringstream os;
  os << (s.is_matrix() ? "herm" : "vec") << s.n;
  return os.str();
}

std::function<Vec(Rng&)> interior_sampler(const PotentialPtr& psi) {
  const SpaceDescriptor sp = psi->space();
  const PotentialKind k = psi->kind();
  std::function<double(Rng&)> coord;
  switch (k) {
    case PotentialKind::kl:
    case PotentialKind::burg:
    case PotentialKind::alpha_family:
      coord = [](Rng& r) { return std::exp(r.uniform(-1.5, 1.5)); };
      break;
    case PotentialKind::fermi_dirac:
      coord = [](Rng& r) { return r.uniform(0.02, 0.98); };
      break;
    case PotentialKind::spectral_lift: {
      PotentialPtr inner = psi->spectral_inner();
      auto s = interior_sampler(inner);
      const int n = sp.n;
      return [s, n](Rng& r) {
        const Vec lam = s(r);
        const CMat u = r.unitary(n);
        const CMat m = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
        return flatten_hermitian(0.5 * (m + m.adjoint()));
      };
    }
    default:
      coord = [](Rng& r) { return r.uniform(-2.0, 2.0); };
      break;
  }
  if (sp.is_matrix()) {
    const int n = sp.n;
    return [coord, n](Rng& r) {
      Vec lam(n);
      for (int i = 0; i < n; ++i) lam[i] = coord(r);
      const CMat u = r.unitary(n);
      const CMat m = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
      return flatten_hermitian(0.5 * (m + m.adjoint()));
    };
  }
  const int d = sp.flat_dim();
  return [coord, d](Rng& r) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = coord(r);
    return x;
  };
}

std::vector<Entry> catalog(const SpaceDescriptor& space, Rng& rng) {
  const bool mat = space.is_matrix();
  const SpaceDescriptor l4 = mat ? SpaceDescriptor::hermitian(space.n, NormSpec::schatten(4.0))
                                 : SpaceDescriptor::vectors(space.n, NormSpec::lp(4.0));
  const int d = space.flat_dim();
  Mat B(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = rng.normal();
  const Mat T = B * B.transpose() / d + Mat::Identity(d, d);
  std::vector<Entry> out;
  auto add = [&](std::string label, PotentialPtr p) {
    auto s = interior_sampler(p);
    out.push_back({std::move(label), std::move(p), std::move(s)});
  };
  add("gauge_phi(1,1/4)", make_gauge_potential(l4, Gauge::power(1.0, 0.25)));
  add("power_sum(1/3)", make_power_sum(space, 1.0 / 3.0));
  add("kl", make_kl(space));
  add("burg", make_burg(space));
  add("fermi_dirac", make_fermi_dirac(space));
  add("alpha(1/2)", make_alpha(space, 0.5));
  add("alpha(-1)", make_alpha(space, -1.0));
  add("squared_pnorm(1/3)", make_squared_pnorm(space, 1.0 / 3.0));
  add("quadratic", make_quadratic(space, T));
  if (mat) {
    for (auto& e : out)
      if (e.psi->kind() == PotentialKind::spectral_lift) e.label = "spectral_" + e.label;
  }
  return out;
}

}  // namespace detail

}  // namespace bregproj::suites
