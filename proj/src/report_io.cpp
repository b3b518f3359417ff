#include "gonlat/report_io.hpp"

#include "gonlat/errors.hpp"

namespace gonlat {

using nlohmann::json;

json mu_to_json(const MuResult& m) {
  if (m.value) return *m.value;
  return json{{"unbounded_above", m.cap}};
}

json report_to_json(const InvariantReport& r) {
  json achievers = json::array();
  for (auto a : r.achievers) achievers.push_back(std::string(to_string(a)));
  json j{
      {"lattice", r.klass.lattice().name()},
      {"class", vector_to_json(r.klass)},
      {"self_int", r.self_int},
      {"phi", r.phi},
      {"phi_witness", vector_to_json(r.phi_witness)},
      {"mu_mode", std::string(to_string(r.mu_mode))},
      {"mu", mu_to_json(r.mu)},
      {"mu_cap", r.mu.cap},
      {"mu_witness", r.mu.witness ? vector_to_json(*r.mu.witness) : json(nullptr)},
      {"quarter_term", r.quarter_term},
      {"gengon", r.gengon},
      {"achiever", achievers},
      {"genus", r.genus},
      {"max_gonality", r.max_gonality},
  };
  if (r.k3) {
    j["k3_self_int"] = r.k3->self_int;
    j["k3_genus"] = r.k3->genus;
    j["k3_gonality"] = r.k3->gonality;
    j["k3_gonality_witness"] = vector_to_json(r.k3->gonality_witness);
    j["k3_clifford"] = r.k3->clifford;
    j["k3_max_gonality"] = r.k3->max_gonality;
  } else {
    for (const char* k : {"k3_self_int", "k3_genus", "k3_gonality", "k3_gonality_witness", "k3_clifford",
                          "k3_max_gonality"})
      j[k] = nullptr;
  }
  if (r.dm) {
    j["dm_value"] = r.dm->value;
    j["dm_witness"] = vector_to_json(r.dm->witness);
    j["dm_witness_norm"] = r.dm->witness_norm;
    j["dm_witness_pairing"] = r.dm->witness_pairing;
  } else {
    for (const char* k : {"dm_value", "dm_witness", "dm_witness_norm", "dm_witness_pairing"}) j[k] = nullptr;
  }
  return j;
}

InvariantReport report_from_json(const json& j, const Lattice& l) {
  try {
    MuResult m{std::nullopt, std::nullopt, j.at("mu_cap").get<std::int64_t>()};
    if (j.at("mu").is_number_integer()) m.value = j.at("mu").get<std::int64_t>();
    if (!j.at("mu_witness").is_null()) m.witness = vector_from_json(l, j.at("mu_witness"));

    std::vector<Achiever> achievers;
    for (const auto& a : j.at("achiever")) achievers.push_back(achiever_from_string(a.get<std::string>()));

    InvariantReport r{
        .klass = vector_from_json(l, j.at("class")),
        .self_int = j.at("self_int").get<std::int64_t>(),
        .phi = j.at("phi").get<std::int64_t>(),
        .phi_witness = vector_from_json(l, j.at("phi_witness")),
        .mu_mode = mu_mode_from_string(j.at("mu_mode").get<std::string>()),
        .mu = std::move(m),
        .quarter_term = j.at("quarter_term").get<std::int64_t>(),
        .gengon = j.at("gengon").get<std::int64_t>(),
        .achievers = std::move(achievers),
        .genus = j.at("genus").get<std::int64_t>(),
        .max_gonality = j.at("max_gonality").get<std::int64_t>(),
        .k3 = std::nullopt,
        .dm = std::nullopt,
    };
    const Lattice cover = rescale(l, 2);
    if (!j.at("k3_gonality").is_null()) {
      r.k3 = K3Invariants{
          .self_int = j.at("k3_self_int").get<std::int64_t>(),
          .genus = j.at("k3_genus").get<std::int64_t>(),
          .gonality = j.at("k3_gonality").get<std::int64_t>(),
          .gonality_witness = vector_from_json(cover, j.at("k3_gonality_witness")),
          .clifford = j.at("k3_clifford").get<std::int64_t>(),
          .max_gonality = j.at("k3_max_gonality").get<std::int64_t>(),
      };
    }
    if (!j.at("dm_value").is_null()) {
      r.dm = CliffordDivisor{
          .value = j.at("dm_value").get<std::int64_t>(),
          .witness = vector_from_json(cover, j.at("dm_witness")),
          .witness_norm = j.at("dm_witness_norm").get<std::int64_t>(),
          .witness_pairing = j.at("dm_witness_pairing").get<std::int64_t>(),
      };
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("malformed report: ") + e.what());
  }
}

}  // namespace gonlat
