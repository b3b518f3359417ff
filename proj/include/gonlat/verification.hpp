#ifndef GONLAT_VERIFICATION_HPP
#define GONLAT_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gonlat/invariants.hpp"

namespace gonlat {

/// SplitMix64: 64-bit state, golden-ratio increment, murmur-style finalizer.
class SplitMix64 {
 public:
  static constexpr std::string_view kName = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [lo, hi] by rejection; no modulo bias.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Independent stream seeded from this one.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

struct SuiteConfig {
  Lattice lattice;
  LatticeVector ample;
  std::int64_t sample_count = 500;
  std::int64_t norm_cap = 60;
  std::vector<std::int64_t> box;  // per-coordinate bound |x_i| <= box[i]
  std::uint64_t rng_seed = 1;
  MuMode mu_mode = MuMode::Kl1Full;
  /// The divisor search and the elliptic-dominance check run on classes with C^2 <= this.
  std::int64_t dm_norm_cap = 60;
  /// 0 picks 4000 * sample_count.
  std::int64_t max_draws = 0;
  /// 0 reads GONLAT_THREADS, falling back to 1.
  unsigned threads = 0;
};

/// Defaults for a lattice: its reference class, and box 6 on hyperbolic-plane
/// coordinates (those touched by an isotropic seed), 2 elsewhere.
SuiteConfig default_suite_config(const Lattice& l);
void validate(const SuiteConfig& cfg);

std::vector<PolarizedClass> sample_classes(const SuiteConfig& cfg);

struct PropertyTally {
  std::string name;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
};

struct Violation {
  std::string property;
  std::string detail;
  std::vector<std::int64_t> klass;
  std::uint64_t seed;
  InvariantReport report;
  /// "confirmed", "oracle_disagrees" or "oracle_box_too_large".
  std::string oracle_status;
};

struct SuiteReport {
  std::string generator;
  std::uint64_t seed = 0;
  std::string lattice;
  std::int64_t classes = 0;
  std::vector<PropertyTally> properties;
  std::vector<Violation> violations;
  double elapsed_seconds = 0;

  bool all_passed() const { return violations.empty(); }
  const PropertyTally* tally(std::string_view name) const;
};

/// Failed properties of a single report as (name, detail). Properties that need
/// the K3 fields are skipped when they are absent, the Enriques inequalities
/// (2 phi bound, trichotomy, phi^2 <= C^2) off enriques_num; elliptic dominance
/// is checked only when C^2 <= dm_norm_cap.
std::vector<std::pair<std::string, std::string>> check_report(const InvariantReport& r, std::int64_t dm_norm_cap);
std::vector<std::string> property_names();

SuiteReport run_suite(const SuiteConfig& cfg);
SuiteReport run_suite_on(const SuiteConfig& cfg, const std::vector<PolarizedClass>& classes);

/// Reports for the sampled classes sorted by (C^2, phi, coordinates).
std::vector<InvariantReport> survey(const SuiteConfig& cfg);
std::vector<InvariantReport> survey_classes(const std::vector<PolarizedClass>& classes, const ReportOptions& opts,
                                            std::int64_t dm_norm_cap, unsigned threads = 0);

std::string survey_csv(const std::vector<InvariantReport>& rows);
nlohmann::json survey_json(const std::vector<InvariantReport>& rows);
nlohmann::json suite_report_json(const SuiteReport& r);
std::string suite_report_text(const SuiteReport& r);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

unsigned resolve_threads(unsigned requested);

}  // namespace gonlat

#endif  // GONLAT_VERIFICATION_HPP
