#ifndef GONLAT_REPORT_IO_HPP
#define GONLAT_REPORT_IO_HPP

#include <json.hpp>

#include "gonlat/invariants.hpp"

namespace gonlat {

/// Flat JSON object; witnesses are integer arrays and an unbounded mu is
/// written as {"unbounded_above": cap}. K3 and divisor fields are null when
/// the class is not on enriques_num.
nlohmann::json report_to_json(const InvariantReport& r);

/// Inverse of report_to_json; `l` is the lattice the class lives on.
InvariantReport report_from_json(const nlohmann::json& j, const Lattice& l);

nlohmann::json mu_to_json(const MuResult& m);

}  // namespace gonlat

#endif  // GONLAT_REPORT_IO_HPP
