#include "stablerep/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stablerep {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw FormatError("field '" + path + "': " + what);
}

/// Non-finite values become the strings "inf", "-inf", "nan".
Json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json vec_json(const Vec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(num(v[i]));
  return arr;
}

Json doubles_json(const std::vector<double>& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(num(x));
  return arr;
}

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double number_at(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

Vec vec_at(const Json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of numbers");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = number_at(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

const Json& array_at(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_array()) fail(join(path, key), "expected an array");
  return v;
}

template <typename Fn>
auto guarded(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  }
}

Json spherical_json(const std::vector<SpectralAtom>& atoms) {
  Json arr = Json::array();
  for (const auto& a : atoms) arr.push_back(Json{{"direction", vec_json(a.direction.coords())}, {"weight", num(a.weight)}});
  return arr;
}

Json condition_json(const Condition& c) {
  Json j{{"id", c.id}, {"passed", c.passed}, {"value", num(c.value)}};
  if (c.vector.size() > 0) j["vector"] = vec_json(c.vector);
  j["note"] = c.note;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json parse_document(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw FormatError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

Json to_json(const Triplet& t) {
  Json j;
  if (const auto* atomic = std::get_if<AtomicMeasure>(&t.nu)) {
    Json atoms = Json::array();
    for (const auto& a : atomic->atoms()) atoms.push_back(Json{{"point", vec_json(a.point)}, {"mass", num(a.mass)}});
    j["atoms"] = std::move(atoms);
  } else {
    Json polar = Json::array();
    for (const auto& c : std::get<PolarMeasure>(t.nu).components()) {
      Json comp{{"direction", vec_json(c.direction.coords())}, {"weight", num(c.weight)}};
      if (const auto* law = std::get_if<PowerLaw>(&c.radial)) {
        comp["radial"] = Json{{"power_law", num(law->alpha)}};
      } else {
        Json radial = Json::array();
        for (const auto& ra : std::get<std::vector<RadialAtom>>(c.radial)) radial.push_back(Json{{"r", num(ra.r)}, {"p", num(ra.p)}});
        comp["radial"] = std::move(radial);
      }
      polar.push_back(std::move(comp));
    }
    j["polar"] = std::move(polar);
  }
  j["gamma"] = vec_json(t.gamma);
  j["flavor"] = to_string(t.flavor);
  return j;
}

Json to_json(const StableLaw& s) {
  return Json{{"alpha", num(s.alpha)}, {"spectral", spherical_json(s.spectral)}, {"tau", vec_json(s.tau)}};
}

Json to_json(const SphericalMeasure& m) { return Json{{"spectral", spherical_json(m)}}; }

Json to_json(const ShotNoiseSpec& spec) {
  Json law = Json::array();
  for (const auto& j : spec.jump_law) law.push_back(Json{{"point", vec_json(j.point)}, {"prob", num(j.prob)}});
  return Json{{"alpha", num(spec.alpha)},
              {"theta", num(spec.theta)},
              {"jump_law", std::move(law)},
              {"max_terms", spec.truncation.max_terms},
              {"tail_budget", num(spec.truncation.tail_budget)},
              {"seed", spec.seed}};
}

Json to_json(const DomainReport& r) {
  Json reasons = Json::array();
  for (const auto& c : r.reasons) reasons.push_back(condition_json(c));
  return Json{{"alpha", num(r.alpha)}, {"member", r.member}, {"reasons", std::move(reasons)}};
}

Json to_json(const IteratedDomainReport& r) {
  Json j{{"member", r.member}, {"first", to_json(r.first)}};
  if (r.second) j["second"] = to_json(*r.second);
  j["pushforward_alpha_moment"] = num(r.pushforward_alpha_moment);
  j["mechanism"] = r.mechanism;
  return j;
}

Json to_json(const PushforwardCertificate& c) {
  Json terms = Json::array();
  for (const auto& t : c.tau_terms) terms.push_back(vec_json(t));
  return Json{{"law", to_json(c.law)},
              {"certificate",
               Json{{"lambda", spherical_json(c.lambda)},
                    {"spectral_constant", num(c.constant.value)},
                    {"tau_terms", std::move(terms)},
                    {"domain", to_json(c.domain)}}}};
}

Json to_json(const RepCertificate& c) {
  Json j{{"representable", c.representable},
         {"alpha_case", to_string(c.alpha_case)},
         {"witness", doubles_json(c.witness)},
         {"reason", c.reason}};
  if (c.preimage) j["preimage"] = to_json(*c.preimage);
  return j;
}

Json to_json(const CfReport& r) {
  Json rows = Json::array();
  for (std::size_t g = 0; g < r.grid.size(); ++g) {
    rows.push_back(Json{{"z", vec_json(r.grid[g])},
                        {"empirical", Json::array({num(r.empirical[g].real()), num(r.empirical[g].imag())})},
                        {"theoretical", Json::array({num(r.theoretical[g].real()), num(r.theoretical[g].imag())})}});
  }
  return Json{{"n", r.n}, {"sup_distance", num(r.sup_distance)}, {"mc_bound", num(r.mc_bound)}, {"grid", std::move(rows)}};
}

Triplet triplet_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  const Vec gamma = vec_at(require(j, "gamma", ""), "gamma");
  const Eigen::Index d = gamma.size();
  Centering flavor = Centering::Raw;
  if (j.contains("flavor")) {
    const Json& f = j["flavor"];
    if (!f.is_string()) fail("flavor", "expected a string");
    flavor = guarded("flavor", [&] { return centering_from_string(f.get<std::string>()); });
  }

  if (j.contains("polar")) {
    const Json& polar = array_at(j, "polar", "");
    PolarMeasure nu(d);
    for (std::size_t i = 0; i < polar.size(); ++i) {
      const std::string path = "polar[" + std::to_string(i) + "]";
      const Json& c = polar[i];
      const Vec dir = vec_at(require(c, "direction", path), path + ".direction");
      const double w = number_at(require(c, "weight", path), path + ".weight");
      const Json& radial = require(c, "radial", path);
      RadialPart part;
      if (radial.is_object()) {
        part = PowerLaw{number_at(require(radial, "power_law", path + ".radial"), path + ".radial.power_law")};
      } else if (radial.is_array()) {
        std::vector<RadialAtom> atoms;
        for (std::size_t k = 0; k < radial.size(); ++k) {
          const std::string rp = path + ".radial[" + std::to_string(k) + "]";
          atoms.push_back(RadialAtom{number_at(require(radial[k], "r", rp), rp + ".r"),
                                     number_at(require(radial[k], "p", rp), rp + ".p")});
        }
        part = std::move(atoms);
      } else {
        fail(path + ".radial", "expected an array or {power_law}");
      }
      guarded(path, [&] {
        nu.add(PolarComponent{UnitVector(dir, 1e-9), w, std::move(part)});
        return 0;
      });
    }
    Triplet t{std::move(nu), gamma, flavor};
    guarded("", [&] { t.validate(); return 0; });
    return t;
  }

  AtomicMeasure nu(d);
  if (j.contains("atoms")) {
    const Json& atoms = array_at(j, "atoms", "");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string path = "atoms[" + std::to_string(i) + "]";
      const Vec x = vec_at(require(atoms[i], "point", path), path + ".point");
      const double m = number_at(require(atoms[i], "mass", path), path + ".mass");
      guarded(path, [&] {
        nu.add(x, m);
        return 0;
      });
    }
  }
  Triplet t{std::move(nu), gamma, flavor};
  guarded("", [&] { t.validate(); return 0; });
  return t;
}

SphericalMeasure spherical_from_json(const Json& j) {
  const Json* arr = &j;
  std::string base;
  if (j.is_object()) {
    arr = &array_at(j, "spectral", "");
    base = "spectral";
  }
  if (!arr->is_array()) fail("spectral", "expected an array");
  SphericalMeasure out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const std::string path = base + "[" + std::to_string(i) + "]";
    const Json& a = (*arr)[i];
    const Vec dir = vec_at(require(a, "direction", path), path + ".direction");
    const double w = number_at(require(a, "weight", path), path + ".weight");
    if (!(w > 0.0)) fail(path + ".weight", "must be positive");
    out.push_back(guarded(path + ".direction", [&] { return SpectralAtom{UnitVector(dir, 1e-9), w}; }));
  }
  return out;
}

StableLaw stable_law_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  StableLaw s{number_at(require(j, "alpha", ""), "alpha"), spherical_from_json(Json{{"spectral", array_at(j, "spectral", "")}}),
              vec_at(require(j, "tau", ""), "tau")};
  guarded("", [&] { s.validate(); return 0; });
  return s;
}

ShotNoiseSpec shot_noise_spec_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  ShotNoiseSpec spec;
  spec.alpha = number_at(require(j, "alpha", ""), "alpha");
  if (j.contains("max_terms")) {
    if (!j["max_terms"].is_number_unsigned()) fail("max_terms", "expected a nonnegative integer");
    spec.truncation.max_terms = j["max_terms"].get<std::size_t>();
  }
  if (j.contains("tail_budget")) spec.truncation.tail_budget = number_at(j["tail_budget"], "tail_budget");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }

  if (j.contains("jump_law")) {
    spec.theta = number_at(require(j, "theta", ""), "theta");
    const Json& law = array_at(j, "jump_law", "");
    for (std::size_t i = 0; i < law.size(); ++i) {
      const std::string path = "jump_law[" + std::to_string(i) + "]";
      spec.jump_law.push_back(JumpAtom{vec_at(require(law[i], "point", path), path + ".point"),
                                       number_at(require(law[i], "prob", path), path + ".prob")});
    }
  } else if (j.contains("atoms")) {
    Json as_triplet = j;
    if (!as_triplet.contains("gamma")) {
      const Json& first = array_at(j, "atoms", "");
      if (first.empty()) fail("atoms", "empty Levy measure");
      as_triplet["gamma"] = Json::array();
      for (std::size_t k = 0; k < require(first[0], "point", "atoms[0]").size(); ++k) as_triplet["gamma"].push_back(0.0);
    }
    const Triplet t = triplet_from_json(as_triplet);
    const auto& nu = std::get<AtomicMeasure>(t.nu);
    spec = guarded("atoms", [&] { return ShotNoiseSpec::from_levy_measure(spec.alpha, nu, spec.truncation, spec.seed); });
  } else {
    fail("jump_law", "missing (or give 'atoms')");
  }
  guarded("", [&] { spec.validate(); return 0; });
  return spec;
}

void write_batch_csv(std::ostream& os, const SampleBatch& batch) {
  for (Eigen::Index k = 0; k < batch.dim; ++k) os << "x" << k << ",";
  os << "terms_used,tail_diagnostic\n";
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (double v : batch.row(i)) os << format_double(v) << ",";
    os << batch.terms_used[i] << "," << format_double(batch.tail_diagnostic[i]) << "\n";
  }
}

void write_cf_report_csv(std::ostream& os, const CfReport& r) {
  const Eigen::Index d = r.grid.empty() ? 0 : r.grid.front().size();
  for (Eigen::Index k = 0; k < d; ++k) os << "z" << k << ",";
  os << "ecf_re,ecf_im,cf_re,cf_im,distance\n";
  for (std::size_t g = 0; g < r.grid.size(); ++g) {
    for (Eigen::Index k = 0; k < d; ++k) os << format_double(r.grid[g][k]) << ",";
    os << format_double(r.empirical[g].real()) << "," << format_double(r.empirical[g].imag()) << ","
       << format_double(r.theoretical[g].real()) << "," << format_double(r.theoretical[g].imag()) << ","
       << format_double(std::abs(r.empirical[g] - r.theoretical[g])) << "\n";
  }
}

void write_cf_summary(std::ostream& os, const CfReport& r, double tolerance) {
  std::size_t worst = 0;
  for (std::size_t g = 0; g < r.grid.size(); ++g) {
    if (std::abs(r.empirical[g] - r.theoretical[g]) > std::abs(r.empirical[worst] - r.theoretical[worst])) worst = g;
  }
  os << "samples:       " << r.n << "\n"
     << "grid points:   " << r.grid.size() << "\n"
     << "sup distance:  " << format_double(r.sup_distance) << "\n"
     << "mc bound:      " << format_double(r.mc_bound) << "\n"
     << "tolerance:     " << format_double(tolerance) << "\n";
  if (!r.grid.empty()) {
    os << "worst z:       [";
    for (Eigen::Index k = 0; k < r.grid[worst].size(); ++k) os << (k ? ", " : "") << format_double(r.grid[worst][k]);
    os << "]\n";
  }
  os << "verdict:       " << (r.sup_distance <= tolerance ? "PASS" : "FAIL") << "\n";
}

}  // namespace stablerep
