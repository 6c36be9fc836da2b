#pragma once

#include "stablerep/domain_gate.hpp"
#include "stablerep/representability.hpp"
#include "stablerep/shotnoise.hpp"
#include "stablerep/stat_verify.hpp"
#include "stablerep/types.hpp"
#include "stablerep/xi_pushforward.hpp"

#include <json.hpp>

#include <ostream>
#include <stdexcept>
#include <string>

namespace stablerep {

using Json = nlohmann::ordered_json;

/// Malformed document; the message names the line or field at fault.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `text`; syntax errors are reported as "<source>:<line>:<column>: ...".
Json parse_document(const std::string& text, const std::string& source);
Json read_document(const std::string& path);

// Documents use the keys: alpha, spectral, tau, atoms, gamma, flavor.
Json to_json(const Triplet& t);
Json to_json(const StableLaw& s);
Json to_json(const SphericalMeasure& m);
Json to_json(const ShotNoiseSpec& spec);
Json to_json(const DomainReport& r);
Json to_json(const IteratedDomainReport& r);
Json to_json(const PushforwardCertificate& c);
Json to_json(const RepCertificate& c);
Json to_json(const CfReport& r);

Triplet triplet_from_json(const Json& j);
StableLaw stable_law_from_json(const Json& j);
/// Reads "spectral" (or a bare array) as a spherical measure.
SphericalMeasure spherical_from_json(const Json& j);
/// Either {alpha, theta, jump_law} or {alpha, atoms} (theta = total mass).
ShotNoiseSpec shot_noise_spec_from_json(const Json& j);

/// One row per sample: coordinates, then terms_used and tail_diagnostic.
void write_batch_csv(std::ostream& os, const SampleBatch& batch);
/// One row per grid point: z coordinates, empirical and theoretical real/imag parts, distance.
void write_cf_report_csv(std::ostream& os, const CfReport& r);
void write_cf_summary(std::ostream& os, const CfReport& r, double tolerance);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace stablerep
