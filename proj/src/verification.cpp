#include "gonlat/verification.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "gonlat/errors.hpp"
#include "gonlat/oracle.hpp"
#include "gonlat/report_io.hpp"

namespace gonlat {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do v = next();
  while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GONLAT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    throw Error(ErrorKind::InvalidConfig, "GONLAT_THREADS must be an integer >= 1");
  }
  return 1;
}

SuiteConfig default_suite_config(const Lattice& l) {
  if (!l.default_ample()) throw Error(ErrorKind::InvalidConfig, "lattice has no default reference class");
  std::vector<std::int64_t> box(static_cast<std::size_t>(l.rank()), 2);
  for (const auto& s : l.isotropic_seeds())
    for (int i = 0; i < l.rank(); ++i)
      if (s(i) != 0) box[static_cast<std::size_t>(i)] = 6;
  return SuiteConfig{.lattice = l, .ample = LatticeVector(l, *l.default_ample()), .box = box};
}

void validate(const SuiteConfig& cfg) {
  if (!(cfg.ample.lattice() == cfg.lattice))
    throw Error(ErrorKind::InvalidConfig, "reference class lives in a different lattice");
  if (cfg.sample_count < 1) throw Error(ErrorKind::InvalidConfig, "sample count must be >= 1");
  if (cfg.norm_cap < 2) throw Error(ErrorKind::InvalidConfig, "norm cap must be >= 2");
  if (static_cast<int>(cfg.box.size()) != cfg.lattice.rank())
    throw Error(ErrorKind::InvalidConfig, "box needs one bound per coordinate (" +
                                              std::to_string(cfg.lattice.rank()) + ")");
  for (auto b : cfg.box)
    if (b < 0) throw Error(ErrorKind::InvalidConfig, "box bounds must be nonnegative");
  if (norm(cfg.ample) <= 0) throw Error(ErrorKind::InvalidConfig, "reference class must have positive square");
}

std::vector<PolarizedClass> sample_classes(const SuiteConfig& cfg) {
  validate(cfg);
  const Lattice& l = cfg.lattice;
  SplitMix64 rng(cfg.rng_seed);
  const std::int64_t draws = cfg.max_draws > 0 ? cfg.max_draws : 4000 * cfg.sample_count;
  std::set<std::vector<std::int64_t>> seen;
  std::vector<PolarizedClass> out;
  IntVector x(l.rank());
  for (std::int64_t d = 0; d < draws && static_cast<std::int64_t>(out.size()) < cfg.sample_count; ++d) {
    for (int i = 0; i < l.rank(); ++i) {
      const auto b = cfg.box[static_cast<std::size_t>(i)];
      x(i) = rng.uniform(-b, b);
    }
    std::int64_t content = 0;
    for (int i = 0; i < l.rank(); ++i) content = std::gcd(content, x(i));
    if (content == 0) continue;
    const IntVector v = x / content;
    const std::int64_t c2 = v.dot(l.gram() * v);
    if (c2 <= 0 || c2 > cfg.norm_cap) continue;
    if (v.dot(l.gram() * cfg.ample.coords()) <= 0) continue;
    std::vector<std::int64_t> key(v.data(), v.data() + v.size());
    if (!seen.insert(key).second) continue;
    out.emplace_back(LatticeVector(l, v), cfg.ample);
  }
  if (out.empty()) throw Error(ErrorKind::EmptySampleSpace, "no admissible class found in the sampling box");
  return out;
}

// ---------------------------------------------------------------- properties

std::vector<std::string> property_names() {
  return {"definition",          "eq2_phi_bound",       "double_cover_bounds", "k3_gonality_is_2phi",
          "parity",              "max_gonality_clamp",  "trichotomy",          "mu_hodge_bound",
          "phi_squared_bound",   "genus_relations",     "gengon_below_max",    "pullback_doubles",
          "pushforward_pullback", "elliptic_dominance"};
}

std::vector<std::pair<std::string, std::string>> check_report(const InvariantReport& r, std::int64_t dm_norm_cap) {
  std::vector<std::pair<std::string, std::string>> fails;
  auto fail = [&](const char* name, std::string detail) { fails.emplace_back(name, std::move(detail)); };
  const std::int64_t c2 = r.self_int;
  const std::int64_t two_phi = 2 * r.phi;

  std::int64_t expect = std::min(two_phi, r.quarter_term);
  if (r.mu.value) expect = std::min(expect, *r.mu.value);
  if (r.gengon != expect || r.quarter_term != c2 / 4 + 2)
    fail("definition", "gengon " + std::to_string(r.gengon) + " != min(2phi, mu, quarter) = " + std::to_string(expect));
  if (!r.mu.value && r.mu.cap < std::min(two_phi, r.quarter_term))
    fail("definition", "mu search cap " + std::to_string(r.mu.cap) + " too small to decide gengon");

  // Inequalities specific to the Enriques lattice.
  const bool enriques = is_enriques_lattice(r.klass.lattice());
  if (enriques && two_phi > r.gengon + 2)
    fail("eq2_phi_bound", "2phi = " + std::to_string(two_phi) + " > gengon + 2");

  if (enriques && r.gengon < two_phi) {
    const bool listed = c2 >= 10 || (c2 == 6 && r.phi == 2) || (c2 == 4 && r.phi == 2);
    if (!listed)
      fail("trichotomy", "gengon < 2phi with (C^2, phi) = (" + std::to_string(c2) + ", " + std::to_string(r.phi) + ")");
  }

  if (r.mu.witness) {
    const std::int64_t bc = inner(*r.mu.witness, r.klass);
    if (norm(*r.mu.witness) != 4 || bc * bc < 4 * c2 || bc - 2 != *r.mu.value)
      fail("mu_hodge_bound", "mu witness pairs to " + std::to_string(bc) + " with C^2 = " + std::to_string(c2));
  }

  if (enriques && r.phi * r.phi > c2) fail("phi_squared_bound", "phi^2 = " + std::to_string(r.phi * r.phi) + " > C^2");
  if (r.gengon > r.max_gonality) fail("gengon_below_max", "gengon exceeds the maximal gonality");

  const bool genus_ok = r.genus == c2 / 2 + 1 && r.max_gonality == (r.genus + 3) / 2;
  if (!r.k3) {
    if (!genus_ok) fail("genus_relations", "g != C^2/2 + 1");
    return fails;
  }

  const K3Invariants& k = *r.k3;
  if (!genus_ok || k.genus != 2 * r.genus - 1 || k.self_int != 2 * c2)
    fail("genus_relations", "g = " + std::to_string(r.genus) + ", k3 genus = " + std::to_string(k.genus));

  if (!(r.gengon <= k.gonality && k.gonality <= 2 * r.gengon))
    fail("double_cover_bounds", "gengon " + std::to_string(r.gengon) + " vs k3 gonality " + std::to_string(k.gonality));

  const LatticeVector lifted = pullback(r.klass);
  if (k.gonality != two_phi || norm(k.gonality_witness) != 0 || inner(k.gonality_witness, lifted) != k.gonality)
    fail("k3_gonality_is_2phi", "k3 gonality " + std::to_string(k.gonality) + " vs 2phi " + std::to_string(two_phi));

  if (k.gonality % 2 != 0 || k.clifford != k.gonality - 2) fail("parity", "k3 gonality " + std::to_string(k.gonality));
  if (k.gonality > (k.genus + 3) / 2 || k.max_gonality != (k.genus + 3) / 2)
    fail("max_gonality_clamp", "k3 gonality above floor((g~+3)/2) = " + std::to_string((k.genus + 3) / 2));

  if (norm(lifted) != 2 * c2 || norm(pullback(r.phi_witness)) != 0)
    fail("pullback_doubles", "pullback does not double the form");
  if (!(pushforward(lifted) == 2 * r.klass)) fail("pushforward_pullback", "pushforward(pullback(C)) != 2C");

  if (c2 <= dm_norm_cap) {
    if (!r.dm) {
      fail("elliptic_dominance", "divisor search found nothing up to 2phi - 2");
    } else {
      const auto& d = *r.dm;
      const bool sandwich = d.value + 2 <= k.gonality && k.gonality <= d.value + 3;
      if (d.value != two_phi - 2 || d.witness_norm != 0 || !sandwich)
        fail("elliptic_dominance", "dm value " + std::to_string(d.value) + " with M^2 = " +
                                       std::to_string(d.witness_norm) + ", expected " + std::to_string(two_phi - 2));
    }
  }
  return fails;
}

const PropertyTally* SuiteReport::tally(std::string_view name) const {
  for (const auto& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

bool property_applies(const std::string& name, const InvariantReport& r, std::int64_t dm_norm_cap) {
  static const std::set<std::string> k3_only{"double_cover_bounds", "k3_gonality_is_2phi", "parity",
                                             "max_gonality_clamp",  "pullback_doubles",    "pushforward_pullback",
                                             "elliptic_dominance"};
  static const std::set<std::string> enriques_only{"eq2_phi_bound", "trichotomy", "phi_squared_bound"};
  if (enriques_only.count(name) && !is_enriques_lattice(r.klass.lattice())) return false;
  if (name == "mu_hodge_bound" && !r.mu.witness) return false;
  if (name == "trichotomy" && r.gengon >= 2 * r.phi) return false;
  if (k3_only.count(name) && !r.k3) return false;
  if (name == "elliptic_dominance" && r.self_int > dm_norm_cap) return false;
  return true;
}

bool report_less(const InvariantReport& a, const InvariantReport& b) {
  if (a.self_int != b.self_int) return a.self_int < b.self_int;
  if (a.phi != b.phi) return a.phi < b.phi;
  return a.klass < b.klass;
}

std::string oracle_status(const InvariantReport& r, const LatticeVector& ample) {
  try {
    const PolarizedClass c(r.klass, ample);
    const auto radii = certified_radii(c, 0, r.phi);
    if (box_size(radii) > kMaxBoxPoints) return "oracle_box_too_large";
    const OracleResult o = box_oracle(c, 0, {.primitive_only = true, .positive_side = true}, radii, r.phi);
    if (o.empty() || o.begin()->first != r.phi) return "oracle_disagrees";
    return "confirmed";
  } catch (const Error&) {
    return "oracle_box_too_large";
  }
}

}  // namespace

std::vector<InvariantReport> survey_classes(const std::vector<PolarizedClass>& classes, const ReportOptions& opts,
                                            std::int64_t dm_norm_cap, unsigned threads) {
  std::vector<std::optional<InvariantReport>> slots(classes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < classes.size(); i = next++) {
      const FiberEnumerator e(classes[i]);
      const PhiResult ph = phi(e);
      InvariantReport r = gengon_report(classes[i], ph, opts);
      if (is_enriques_lattice(classes[i].lattice())) {
        r.k3 = k3_report(classes[i], ph);
        if (r.self_int <= dm_norm_cap) r.dm = dm_min(classes[i], opts.dm_cap.value_or(r.k3->clifford));
      }
      slots[i] = std::move(r);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(classes.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  std::vector<InvariantReport> out;
  out.reserve(classes.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  std::sort(out.begin(), out.end(), report_less);
  return out;
}

std::vector<InvariantReport> survey(const SuiteConfig& cfg) {
  return survey_classes(sample_classes(cfg), {.mu_mode = cfg.mu_mode, .mu_cap = std::nullopt, .dm_cap = std::nullopt}, cfg.dm_norm_cap,
                        cfg.threads);
}

SuiteReport run_suite_on(const SuiteConfig& cfg, const std::vector<PolarizedClass>& classes) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.generator = std::string(SplitMix64::kName);
  rep.seed = cfg.rng_seed;
  rep.lattice = cfg.lattice.name();
  rep.classes = static_cast<std::int64_t>(classes.size());

  const auto reports =
      survey_classes(classes, {.mu_mode = cfg.mu_mode, .mu_cap = std::nullopt, .dm_cap = std::nullopt}, cfg.dm_norm_cap, cfg.threads);

  std::map<std::string, PropertyTally> tallies;
  for (const auto& name : property_names()) tallies[name].name = name;
  for (const auto& r : reports) {
    const auto fails = check_report(r, cfg.dm_norm_cap);
    std::set<std::string> failed;
    for (const auto& [name, detail] : fails) {
      if (!failed.insert(name).second) continue;
      rep.violations.push_back(Violation{name, detail, r.klass.to_std(), cfg.rng_seed, r, oracle_status(r, cfg.ample)});
    }
    for (const auto& name : property_names()) {
      if (!property_applies(name, r, cfg.dm_norm_cap)) continue;
      if (failed.count(name)) ++tallies[name].failed;
      else ++tallies[name].passed;
    }
  }

  // lattice-level checks on the cover, once per run
  const Lattice* base = cfg.lattice.covered_lattice();
  if (is_enriques_lattice(cfg.lattice) || (base && is_enriques_lattice(*base))) {
    PropertyTally two_div{"k3_two_divisible", 0, 0};
    const Lattice k3 = base ? cfg.lattice : rescale(cfg.lattice, 2);
    if (is_two_divisible(k3)) {
      ++two_div.passed;
    } else {
      ++two_div.failed;
      if (!reports.empty())
        rep.violations.push_back(Violation{"k3_two_divisible", "doubled lattice has a norm not divisible by 4",
                                           {}, cfg.rng_seed, reports.front(), "confirmed"});
    }
    rep.properties.push_back(two_div);
  }
  for (const auto& name : property_names()) rep.properties.push_back(tallies[name]);
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SuiteReport run_suite(const SuiteConfig& cfg) { return run_suite_on(cfg, sample_classes(cfg)); }

// ---------------------------------------------------------------- emitters

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

namespace {

std::string join_coords(const LatticeVector& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string mu_text(const MuResult& m) {
  return m.value ? std::to_string(*m.value) : "inf@" + std::to_string(m.cap);
}

std::string achiever_text(const std::vector<Achiever>& a) {
  std::string s;
  for (auto x : a) {
    if (!s.empty()) s += '|';
    s += to_string(x);
  }
  return s;
}

}  // namespace

std::string survey_csv(const std::vector<InvariantReport>& rows) {
  std::ostringstream out;
  out << "class,self_int,genus,phi,mu,mu_mode,quarter_term,gengon,achiever,max_gonality,"
         "k3_gonality,k3_clifford,phi_witness,mu_witness,dm_value,dm_witness\r\n";
  for (const auto& r : rows) {
    out << csv_field(join_coords(r.klass)) << ',' << r.self_int << ',' << r.genus << ',' << r.phi << ','
        << mu_text(r.mu) << ',' << to_string(r.mu_mode) << ',' << r.quarter_term << ',' << r.gengon << ','
        << achiever_text(r.achievers) << ',' << r.max_gonality << ','
        << (r.k3 ? std::to_string(r.k3->gonality) : "") << ',' << (r.k3 ? std::to_string(r.k3->clifford) : "")
        << ',' << csv_field(join_coords(r.phi_witness)) << ','
        << (r.mu.witness ? csv_field(join_coords(*r.mu.witness)) : "") << ','
        << (r.dm ? std::to_string(r.dm->value) : "") << ',' << (r.dm ? csv_field(join_coords(r.dm->witness)) : "")
        << "\r\n";
  }
  return out.str();
}

nlohmann::json survey_json(const std::vector<InvariantReport>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(report_to_json(r));
  return arr;
}

nlohmann::json suite_report_json(const SuiteReport& r) {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : r.properties) props.push_back({{"name", p.name}, {"passed", p.passed}, {"failed", p.failed}});
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& v : r.violations)
    viol.push_back({{"property", v.property},
                    {"detail", v.detail},
                    {"class", v.klass},
                    {"seed", v.seed},
                    {"oracle", v.oracle_status},
                    {"report", report_to_json(v.report)}});
  return {{"generator", r.generator},
          {"seed", r.seed},
          {"lattice", r.lattice},
          {"classes", r.classes},
          {"properties", props},
          {"violations", viol},
          {"all_passed", r.all_passed()},
          {"elapsed_seconds", r.elapsed_seconds}};
}

std::string suite_report_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "generator " << r.generator << " seed " << r.seed << " lattice " << r.lattice << " classes " << r.classes
      << "\n";
  for (const auto& p : r.properties)
    out << (p.failed ? "FAIL " : "ok   ") << p.name << "  passed " << p.passed << "  failed " << p.failed << "\n";
  for (const auto& v : r.violations) {
    out << "violation " << v.property << " class [";
    for (std::size_t i = 0; i < v.klass.size(); ++i) out << (i ? "," : "") << v.klass[i];
    out << "] seed " << v.seed << " oracle " << v.oracle_status << ": " << v.detail << "\n";
  }
  out << (r.all_passed() ? "all properties hold" : "violations found") << " (" << r.elapsed_seconds << " s)\n";
  return out.str();
}

}  // namespace gonlat
