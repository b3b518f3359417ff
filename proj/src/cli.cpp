#include "gonlat/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "gonlat/errors.hpp"
#include "gonlat/invariants.hpp"
#include "gonlat/report_io.hpp"
#include "gonlat/verification.hpp"

namespace gonlat {

namespace {

/// Raised for bad flag values; the message names the flag.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_int_list(const std::string& flag, const std::string& text) {
  static const std::regex pattern(R"(^-?[0-9]+(,-?[0-9]+)*$)");
  if (!std::regex_match(text, pattern))
    throw UsageError(flag + ": expected comma-separated integers without spaces, got '" + text + "'");
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::out_of_range&) {
      throw UsageError(flag + ": integer out of range '" + item + "'");
    }
  }
  return out;
}

nlohmann::json read_json_file(const std::string& flag, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(flag + ": cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(flag + ": invalid JSON in '" + path + "': " + e.what());
  }
}

Lattice resolve_lattice(const std::string& spec) {
  for (const auto& name : preset_names())
    if (spec == name) return preset(name);
  if (std::filesystem::exists(spec)) {
    try {
      return lattice_from_json(read_json_file("--lattice", spec));
    } catch (const Error& e) {
      throw UsageError(std::string("--lattice: ") + e.what());
    }
  }
  throw UsageError("--lattice: '" + spec + "' is neither a preset nor a readable config file");
}

LatticeVector to_vector(const std::string& flag, const Lattice& l, const std::vector<std::int64_t>& v) {
  if (static_cast<int>(v.size()) != l.rank())
    throw UsageError(flag + ": has " + std::to_string(v.size()) + " entries but the lattice has rank " +
                     std::to_string(l.rank()));
  IntVector x(l.rank());
  for (int i = 0; i < l.rank(); ++i) x(i) = v[static_cast<std::size_t>(i)];
  return LatticeVector(l, x);
}

struct ClassArgs {
  std::string klass;
  std::string ample;
  std::string class_file;
};

/// --class-file wins over --class/--ample when both are given.
PolarizedClass resolve_class(const Lattice& l, const ClassArgs& a) {
  std::optional<LatticeVector> c, h;
  if (!a.class_file.empty()) {
    const auto j = read_json_file("--class-file", a.class_file);
    try {
      const auto& cj = j.is_array() ? j : j.at("class");
      c = to_vector("--class-file", l, cj.get<std::vector<std::int64_t>>());
      if (j.is_object() && j.contains("ample"))
        h = to_vector("--class-file", l, j.at("ample").get<std::vector<std::int64_t>>());
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("--class-file: ") + e.what());
    }
  } else if (!a.klass.empty()) {
    c = to_vector("--class", l, parse_int_list("--class", a.klass));
  } else {
    throw UsageError("--class: required (or --class-file)");
  }
  if (!h && !a.ample.empty()) h = to_vector("--ample", l, parse_int_list("--ample", a.ample));
  try {
    if (h) return PolarizedClass(*c, *h);
    return PolarizedClass(*c);
  } catch (const Error& e) {
    throw UsageError(std::string("--class: ") + e.what());
  }
}

void write_report_text(std::ostream& out, const InvariantReport& r) {
  auto vec = [](const LatticeVector& v) {
    std::string s = "(";
    for (int i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  out << "class          " << vec(r.klass) << "  on " << r.klass.lattice().name() << "\n";
  out << "C^2            " << r.self_int << "\n";
  out << "genus          " << r.genus << "  (maximal gonality " << r.max_gonality << ")\n";
  out << "phi            " << r.phi << "  witness " << vec(r.phi_witness) << "\n";
  out << "mu (" << to_string(r.mu_mode) << ")  ";
  if (r.mu.value) out << *r.mu.value << "  witness " << vec(*r.mu.witness) << "\n";
  else out << "> " << r.mu.cap << " (unbounded within cap)\n";
  out << "quarter term   " << r.quarter_term << "\n";
  out << "gengon         " << r.gengon << "  achieved by";
  for (auto a : r.achievers) out << " " << to_string(a);
  out << "\n";
  if (r.k3) {
    out << "K3 cover       C~^2 = " << r.k3->self_int << ", genus " << r.k3->genus << "\n";
    out << "K3 gonality    " << r.k3->gonality << "  witness " << vec(r.k3->gonality_witness) << "  (max "
        << r.k3->max_gonality << ")\n";
    out << "K3 Clifford    " << r.k3->clifford << "\n";
  }
  if (r.dm)
    out << "divisor min    " << r.dm->value << "  M = " << vec(r.dm->witness) << "  M^2 = " << r.dm->witness_norm
        << "  M.C~ = " << r.dm->witness_pairing << "\n";
}

nlohmann::json witness_json(const InvariantReport& r) {
  nlohmann::json j{{"class", vector_to_json(r.klass)},
                   {"phi", {{"value", r.phi}, {"witness", vector_to_json(r.phi_witness)},
                            {"pairing", inner(r.phi_witness, r.klass)}}}};
  if (r.mu.witness)
    j["mu"] = {{"value", *r.mu.value}, {"witness", vector_to_json(*r.mu.witness)},
               {"pairing", inner(*r.mu.witness, r.klass)}};
  else
    j["mu"] = mu_to_json(r.mu);
  if (r.k3)
    j["k3_gonality"] = {{"value", r.k3->gonality}, {"witness", vector_to_json(r.k3->gonality_witness)},
                        {"pairing", inner(r.k3->gonality_witness, pullback(r.klass))}};
  if (r.dm)
    j["dm"] = {{"value", r.dm->value}, {"witness", vector_to_json(r.dm->witness)},
               {"norm", r.dm->witness_norm}, {"pairing", r.dm->witness_pairing}};
  return j;
}

void write_survey_text(std::ostream& out, const std::vector<InvariantReport>& rows) {
  out << "C^2  g   phi  mu      quarter  gengon  achiever        k3_gon  k3_cliff  class\n";
  for (const auto& r : rows) {
    std::string mu = r.mu.value ? std::to_string(*r.mu.value) : "inf@" + std::to_string(r.mu.cap);
    std::string ach;
    for (auto a : r.achievers) ach += (ach.empty() ? "" : "|") + std::string(to_string(a));
    std::string cls;
    for (int i = 0; i < r.klass.size(); ++i) cls += (i ? "," : "") + std::to_string(r.klass[i]);
    char line[256];
    std::snprintf(line, sizeof line, "%-4lld %-3lld %-4lld %-7s %-8lld %-7lld %-15s %-7s %-9s ",
                  static_cast<long long>(r.self_int), static_cast<long long>(r.genus),
                  static_cast<long long>(r.phi), mu.c_str(), static_cast<long long>(r.quarter_term),
                  static_cast<long long>(r.gengon), ach.c_str(),
                  r.k3 ? std::to_string(r.k3->gonality).c_str() : "-",
                  r.k3 ? std::to_string(r.k3->clifford).c_str() : "-");
    out << line << cls << "\n";
  }
}

}  // namespace

int parse_and_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gonality invariants of classes on hyperbolic lattices", "gonlat"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string lattice_spec = "enriques_num";
  std::string format = "text";
  ClassArgs cls;
  std::string mu_mode = "kl1_full";
  std::optional<std::int64_t> mu_cap, dm_cap;
  std::int64_t count = 500, norm_cap = 60, dm_norm_cap = -1;
  std::uint64_t seed = 1;
  std::string box;
  unsigned threads = 0;

  auto add_lattice = [&](CLI::App* s) {
    s->add_option("--lattice", lattice_spec, "preset name or lattice config JSON path")->capture_default_str();
  };
  auto add_format = [&](CLI::App* s, std::vector<std::string> allowed) {
    s->add_option("--format", format, "output format")->check(CLI::IsMember(allowed))->capture_default_str();
  };
  auto add_class = [&](CLI::App* s) {
    s->add_option("--class", cls.klass, "class coordinates, e.g. 2,3,0,0,0,0,0,0,0,0");
    s->add_option("--ample", cls.ample, "reference class coordinates (default: lattice default)");
    s->add_option("--class-file", cls.class_file, "JSON file with \"class\" (and optional \"ample\"); overrides flags");
    s->add_option("--mu-mode", mu_mode, "paper_literal or kl1_full")
        ->check(CLI::IsMember({"paper_literal", "kl1_full"}))
        ->capture_default_str();
    s->add_option("--mu-cap", mu_cap, "raise the mu search cap");
    s->add_option("--dm-cap", dm_cap, "cap on the divisor search value");
  };
  auto add_suite = [&](CLI::App* s) {
    s->add_option("--count", count, "number of classes")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--seed", seed, "64-bit sampling seed")->capture_default_str();
    s->add_option("--box", box, "coordinate bound, one integer or one per coordinate");
    s->add_option("--norm-cap", norm_cap, "maximum C^2")->capture_default_str();
    s->add_option("--dm-norm-cap", dm_norm_cap, "divisor search only for C^2 <= this (default: norm cap)");
    s->add_option("--mu-mode", mu_mode, "paper_literal or kl1_full")
        ->check(CLI::IsMember({"paper_literal", "kl1_full"}))
        ->capture_default_str();
    s->add_option("--threads", threads, "worker threads (default: GONLAT_THREADS or 1)");
  };

  auto* inv = app.add_subcommand("invariants", "full invariant report of one class");
  add_lattice(inv);
  add_format(inv, {"text", "json"});
  add_class(inv);
  auto* wit = app.add_subcommand("witness", "minimizing classes and their pairings");
  add_lattice(wit);
  add_format(wit, {"text", "json"});
  add_class(wit);
  auto* lat = app.add_subcommand("lattice", "Gram matrix, signature and two-divisibility");
  add_lattice(lat);
  add_format(lat, {"text", "json"});
  auto* sur = app.add_subcommand("survey", "tabulate invariants over sampled classes");
  add_lattice(sur);
  add_format(sur, {"text", "json", "csv"});
  add_suite(sur);
  auto* ver = app.add_subcommand("verify", "check every relation on sampled classes");
  add_lattice(ver);
  add_format(ver, {"text", "json"});
  add_suite(ver);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gonlat: " << e.what() << "\n";
    return 2;
  }

  std::ostringstream buf;
  try {
    const Lattice l = resolve_lattice(lattice_spec);
    if (inv->parsed() || wit->parsed()) {
      const PolarizedClass c = resolve_class(l, cls);
      ReportOptions opts{.mu_mode = mu_mode_from_string(mu_mode), .mu_cap = mu_cap, .dm_cap = dm_cap};
      if (dm_cap && *dm_cap < 0) throw UsageError("--dm-cap: must be nonnegative");
      const InvariantReport r = full_report(c, opts);
      if (inv->parsed()) {
        if (format == "json") buf << report_to_json(r).dump(2) << "\n";
        else write_report_text(buf, r);
      } else {
        const auto j = witness_json(r);
        if (format == "json") buf << j.dump(2) << "\n";
        else
          for (auto it = j.begin(); it != j.end(); ++it) buf << it.key() << ": " << it.value().dump() << "\n";
      }
    } else if (lat->parsed()) {
      const auto j = lattice_to_json(l);
      if (format == "json") {
        buf << j.dump(2) << "\n";
      } else {
        buf << "name: " << l.name() << "\nrank: " << l.rank() << "\nsignature: (" << l.signature().positive << ","
            << l.signature().negative << ")\ndeterminant: " << l.determinant()
            << "\neven: " << (l.is_even() ? "true" : "false")
            << "\ntwo_divisible: " << (is_two_divisible(l) ? "true" : "false") << "\ngram:\n";
        for (int i = 0; i < l.rank(); ++i) {
          buf << " ";
          for (int k = 0; k < l.rank(); ++k) buf << " " << std::setw(3) << l.gram()(i, k);
          buf << "\n";
        }
      }
    } else {
      SuiteConfig cfg = default_suite_config(l);
      cfg.sample_count = count;
      cfg.rng_seed = seed;
      cfg.norm_cap = norm_cap;
      cfg.dm_norm_cap = dm_norm_cap >= 0 ? dm_norm_cap : norm_cap;
      cfg.mu_mode = mu_mode_from_string(mu_mode);
      cfg.threads = threads;
      if (!box.empty()) {
        const auto b = parse_int_list("--box", box);
        if (b.size() == 1) cfg.box.assign(static_cast<std::size_t>(l.rank()), b.front());
        else if (static_cast<int>(b.size()) == l.rank()) cfg.box = b;
        else throw UsageError("--box: give one bound or " + std::to_string(l.rank()));
      }
      try {
        validate(cfg);
      } catch (const Error& e) {
        throw UsageError(std::string("--box/--count/--norm-cap: ") + e.what());
      }
      if (sur->parsed()) {
        const auto rows = survey(cfg);
        if (format == "csv") buf << survey_csv(rows);
        else if (format == "json") buf << survey_json(rows).dump(2) << "\n";
        else write_survey_text(buf, rows);
      } else {
        const SuiteReport rep = run_suite(cfg);
        if (format == "json") buf << suite_report_json(rep).dump(2) << "\n";
        else buf << suite_report_text(rep);
        out << buf.str();
        return rep.all_passed() ? 0 : 1;
      }
    }
  } catch (const UsageError& e) {
    err << "gonlat: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "gonlat: " << e.what() << "\n";
    return 2;
  }
  out << buf.str();
  return 0;
}

}  // namespace gonlat
