// Field name registries and the bundled reference constants: the 22 ESI
// fields, the 9 NSF broad fields, the default ESI->NSF mapping, the
// total-citation ratio table, the reference (T, H) pairs, and the two fixed
// divisor presets.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "citerank/rational.hpp"

namespace citerank::fields {

/// Broad field everything is normalized against.
const std::string& base_nsf_field();  // "Mathematics"

const std::vector<std::string>& esi_universe();
const std::vector<std::string>& nsf_universe();

/// Canonical spelling for a fine-grained field name, accepting the common
/// display variants ("MATERIALS SCIENCE", "Geo sciences", "Plant & animal
/// science", ...). nullopt when the name is not recognized.
std::optional<std::string> canonical_esi(std::string_view raw);
std::optional<std::string> canonical_nsf(std::string_view raw);

/// Default 22 -> 9 mapping of ESI fields onto NSF broad fields.
const std::map<std::string, std::string>& default_mapping();

/// Reference ratios of total citations per broad field to the mathematics
/// total (mathematics = 1).
const std::map<std::string, std::int64_t>& reference_t_ratios();

/// Reference (field, T, H) rows relating total-citation ratios to
/// top-researcher citation ratios; 8 distinct pairs, both T = 78 broad
/// fields sharing the last one.
const std::vector<std::tuple<std::string, std::int64_t, std::int64_t>>&
reference_th_pairs();

/// Integer divisor preset taken from the reference mapping table.
const std::map<std::string, Rational>& table2_divisors();

/// Divisor preset recovered from the bundled 200-row reference list:
/// two-thirds of T for most groups, 39 for the two T = 78 groups, and a
/// 16/3 override for Environment and ecology.
const std::map<std::string, Rational>& appendix_divisors();

}  // namespace citerank::fields
