#include "stablerep/domain_gate.hpp"
#include "stablerep/representability.hpp"
#include "stablerep/serialize.hpp"
#include "stablerep/shotnoise.hpp"
#include "stablerep/stat_verify.hpp"
#include "stablerep/xi_pushforward.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#ifndef STABLEREP_VERSION
#define STABLEREP_VERSION "0.0.0"
#endif

namespace {

using namespace stablerep;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string command;
  std::string input;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::size_t n = 1000;
  std::string out;
  double eps = 0.0;
  std::optional<double> horizon;
  std::optional<double> tail_budget;
  std::optional<std::size_t> max_terms;
  std::size_t grid = 61;
  std::optional<double> tolerance;
};

template <typename T>
Json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return format_double(*v);
  return *v;
}

/// Every flag, as given or defaulted; null where the value comes from the input document.
Json config_json(const Options& o) {
  return Json{{"version", STABLEREP_VERSION},
              {"command", o.command},
              {"input", o.input},
              {"alpha", opt_json(o.alpha)},
              {"seed", opt_json(o.seed)},
              {"n", o.n},
              {"out", o.out},
              {"eps", format_double(o.eps)},
              {"T", opt_json(o.horizon)},
              {"tail_budget", opt_json(o.tail_budget)},
              {"max_terms", opt_json(o.max_terms)},
              {"grid", o.grid},
              {"tolerance", opt_json(o.tolerance)}};
}

void write_csv_header(std::ostream& os, const Options& o, const Json& effective) {
  os << "# stablerep " << STABLEREP_VERSION << "\n";
  const Json config = config_json(o);
  for (const auto& [k, v] : config.items()) os << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (const auto& [k, v] : effective.items()) os << "# effective." << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw FormatError(path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_json(const Options& o, Json result) {
  Output out(o.out);
  Json doc{{"config", config_json(o)}, {"result", std::move(result)}};
  out.stream() << doc.dump(2) << "\n";
}

double alpha_of(const Options& o, const Json& doc) {
  if (o.alpha) return *o.alpha;
  if (doc.is_object() && doc.contains("alpha")) {
    if (!doc["alpha"].is_number()) throw FormatError("field 'alpha': expected a number");
    return doc["alpha"].get<double>();
  }
  throw FormatError("field 'alpha': missing (give --alpha or an \"alpha\" key)");
}

Json law_document(const Json& doc, double alpha) {
  Json j = doc;
  j["alpha"] = alpha;
  return j;
}

ShotNoiseSpec spec_of(const Options& o, const Json& doc) {
  Json j = doc;
  j["alpha"] = alpha_of(o, doc);
  if (o.seed) j["seed"] = *o.seed;
  if (o.tail_budget) j["tail_budget"] = *o.tail_budget;
  if (o.max_terms) j["max_terms"] = *o.max_terms;
  return shot_noise_spec_from_json(j);
}

/// The law of the series: push-forward of (0, theta law(V), 0).
StableLaw series_law(const ShotNoiseSpec& spec) {
  return pushforward_law(spec.alpha, Triplet{spec.levy_measure(), Vec::Zero(spec.dim()), Centering::Drift});
}

int cmd_sample(const Options& o, const Json& doc) {
  const ShotNoiseSpec spec = spec_of(o, doc);
  SampleBatch batch;
  Json effective = to_json(spec);
  if (o.horizon) {
    batch = sample_cp_integral(spec, o.eps, *o.horizon, o.n).batch;
    effective["mode"] = "cp-integral";
  } else {
    const TruncationPlan plan = plan_truncation(spec);
    batch = sample_series(spec, o.n);
    effective["mode"] = "series";
    effective["terms"] = plan.terms;
    effective["capped"] = plan.capped;
  }
  Output out(o.out);
  write_csv_header(out.stream(), o, effective);
  write_batch_csv(out.stream(), batch);
  return kExitOk;
}

int cmd_domain(const Options& o, const Json& doc) {
  const double alpha = alpha_of(o, doc);
  const Triplet t = triplet_from_json(doc);
  const IteratedDomainReport it = in_domain_iterated(alpha, t);
  emit_json(o, Json{{"verdict", it.first.member ? "member" : "not a member"},
                    {"domain", to_json(it.first)},
                    {"iterated", to_json(it)}});
  return it.first.member ? kExitOk : kExitFail;
}

int cmd_push(const Options& o, const Json& doc) {
  const double alpha = alpha_of(o, doc);
  const Triplet t = triplet_from_json(doc);
  const DomainReport r = in_domain(alpha, t);
  if (!r.member) {
    emit_json(o, Json{{"verdict", "not in domain"}, {"domain", to_json(r)}});
    return kExitFail;
  }
  emit_json(o, to_json(pushforward_certificate(alpha, t)));
  return kExitOk;
}

int cmd_preimage(const Options& o, const Json& doc) {
  const double alpha = alpha_of(o, doc);
  const StableLaw s = stable_law_from_json(law_document(doc, alpha));
  const Triplet t = alpha == 1.0 ? preimage_unit(s) : preimage(alpha, s);
  emit_json(o, Json{{"preimage", to_json(t)}, {"pushforward", to_json(pushforward_law(alpha, t))}});
  return kExitOk;
}

int cmd_representable(const Options& o, const Json& doc) {
  const double alpha = alpha_of(o, doc);
  const StableLaw s = stable_law_from_json(law_document(doc, alpha));
  const RepCertificate c = series_representable(s);
  Json result = to_json(c);
  result["verdict"] = c.representable ? "representable" : "not representable";
  result["verified"] = verify_certificate(s, c);
  emit_json(o, std::move(result));
  return c.representable ? kExitOk : kExitFail;
}

int cmd_verify(const Options& o, const Json& doc) {
  const ShotNoiseSpec spec = spec_of(o, doc);
  const StableLaw law = series_law(spec);
  const SampleBatch batch = sample_series(spec, o.n);
  const CfReport r = cf_sup_distance(batch, law, default_grid(spec.dim(), o.grid));
  const double tol = o.tolerance ? *o.tolerance : cf_tolerance(batch.size(), mean_tail_diagnostic(batch));
  const bool pass = r.sup_distance <= tol;

  Json effective = to_json(spec);
  effective["law"] = to_json(law);
  effective["tolerance"] = format_double(tol);
  if (!o.out.empty()) {
    Output out(o.out);
    write_csv_header(out.stream(), o, effective);
    write_cf_report_csv(out.stream(), r);
  }
  write_cf_summary(std::cout, r, tol);
  return pass ? kExitOk : kExitFail;
}

int cmd_pair(const Options& o, const Json& doc) {
  const SphericalMeasure lambda = spherical_from_json(doc);
  const auto [a, b] = noninjective_pair(lambda);
  const StableLaw la = pushforward_law(1.0, a), lb = pushforward_law(1.0, b);
  const double gap = law_discrepancy(la, lb);
  const bool ok = gap <= 1e-10 && to_json(a) != to_json(b);
  emit_json(o, Json{{"first", to_json(a)},
                    {"second", to_json(b)},
                    {"pushforward_first", to_json(la)},
                    {"pushforward_second", to_json(lb)},
                    {"discrepancy", format_double(gap)},
                    {"verdict", ok ? "equal push-forwards" : "push-forwards differ"}});
  return ok ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shot-noise representations of stable laws"};
  app.set_version_flag("--version", std::string("stablerep ") + STABLEREP_VERSION);
  app.require_subcommand(1, 1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&, const Json&);
  };
  const Command commands[] = {
      {"sample", "Draw samples of the shot-noise series (or the compound Poisson integral with --T)", cmd_sample},
      {"domain", "Check membership of a triplet in the domain of the integral mapping", cmd_domain},
      {"push", "Push a triplet forward to its stable law", cmd_push},
      {"preimage", "Compound Poisson preimage of a strictly stable law", cmd_preimage},
      {"representable", "Decide series representability of a strictly stable law", cmd_representable},
      {"verify", "Compare the sampler's empirical CF with the theoretical CF", cmd_verify},
      {"pair", "Two distinct triplets with the same alpha = 1 push-forward", cmd_pair},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("input", o.input, "JSON input document")->required()->check(CLI::ExistingFile);
    sub->add_option("--alpha", o.alpha, "Stability index (overrides the document)");
    sub->add_option("--seed", o.seed, "Master seed (default 42)");
    sub->add_option("--n", o.n, "Number of samples")->capture_default_str();
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--eps", o.eps, "Lower integration limit for --T sampling")->capture_default_str();
    sub->add_option("--T", o.horizon, "Horizon: sample the compound Poisson integral over (eps, T]");
    sub->add_option("--tail-budget", o.tail_budget, "Expected truncation error budget (alpha < 1)");
    sub->add_option("--max-terms", o.max_terms, "Cap on series terms");
    sub->add_option("--grid", o.grid, "Grid points per axis")->capture_default_str();
    sub->add_option("--tolerance", o.tolerance, "CF sup-distance tolerance (default from N and the tail)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  for (const auto& c : commands) {
    if (!app.got_subcommand(c.name)) continue;
    o.command = c.name;
    try {
      return c.run(o, read_document(o.input));
    } catch (const FormatError& e) {
      std::cerr << "error: " << e.what() << "\n";
    } catch (const InvalidArgument& e) {
      std::cerr << "error: " << o.input << ": " << e.what() << "\n";
    } catch (const DomainError& e) {
      std::cerr << "error: " << o.input << ": " << e.what() << "\n";
    }
    return kExitInput;
  }
  return kExitInput;
}
