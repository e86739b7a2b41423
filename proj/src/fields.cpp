#include "citerank/fields.hpp"

#include <cctype>
#include <unordered_map>

namespace citerank::fields {

namespace {

// Lookup key: uppercase, '&' -> AND, punctuation -> space, collapsed runs.
std::string field_key(std::string_view raw) {
  std::string key;
  key.reserve(raw.size() + 8);
  auto push_space = [&] {
    if (!key.empty() && key.back() != ' ') key.push_back(' ');
  };
  for (char c : raw) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (c == '&') {
      push_space();
      key += "AND";
      push_space();
    } else if (c == '/' || c == '-' || c == ',' || std::isspace(uc)) {
      push_space();
    } else {
      key.push_back(static_cast<char>(std::toupper(uc)));
    }
  }
  while (!key.empty() && key.back() == ' ') key.pop_back();
  return key;
}

struct Registry {
  std::vector<std::string> esi;
  std::vector<std::string> nsf;
  std::unordered_map<std::string, std::string> esi_aliases;  // key -> canonical
  std::unordered_map<std::string, std::string> nsf_aliases;
  std::map<std::string, std::string> mapping;  // esi -> nsf

  void add_esi(const std::string& canonical, const std::string& nsf_target,
               std::initializer_list<const char*> extra_aliases = {}) {
    esi.push_back(canonical);
    esi_aliases[field_key(canonical)] = canonical;
    for (const char* a : extra_aliases) esi_aliases[field_key(a)] = canonical;
    mapping[canonical] = nsf_target;
  }

  void add_nsf(const std::string& canonical,
               std::initializer_list<const char*> extra_aliases = {}) {
    nsf.push_back(canonical);
    nsf_aliases[field_key(canonical)] = canonical;
    for (const char* a : extra_aliases) nsf_aliases[field_key(a)] = canonical;
  }
};

const Registry& registry() {
  static const Registry r = [] {
    Registry reg;
    reg.add_nsf("Biology");
    reg.add_nsf("Biomedical research");
    reg.add_nsf("Chemistry");
    reg.add_nsf("Clinical medicine");
    reg.add_nsf("Earth and space sciences", {"Earth/space sciences"});
    reg.add_nsf("Engineering and technology", {"Engineering/technology"});
    reg.add_nsf("Mathematics");
    reg.add_nsf("Physics");
    reg.add_nsf("Social/behavioral sciences", {"Social and behavioral sciences"});

    reg.add_esi("Agriculture", "Biology");
    reg.add_esi("Biology and biochemistry", "Biomedical research");
    reg.add_esi("Chemistry", "Chemistry");
    reg.add_esi("Clinical medicine", "Clinical medicine");
    reg.add_esi("Computer science", "Engineering and technology");
    reg.add_esi("Economics and business", "Social/behavioral sciences");
    reg.add_esi("Engineering", "Engineering and technology");
    reg.add_esi("Environment and ecology", "Earth and space sciences",
                {"Environment/Ecology"});
    reg.add_esi("Geosciences", "Earth and space sciences", {"Geo sciences"});
    reg.add_esi("Immunology", "Clinical medicine");
    reg.add_esi("Materials science", "Engineering and technology",
                {"Material science"});
    reg.add_esi("Mathematics", "Mathematics");
    reg.add_esi("Microbiology", "Biomedical research");
    reg.add_esi("Molecular biology and genetics", "Biomedical research");
    reg.add_esi("Multidisciplinary", "Engineering and technology");
    reg.add_esi("Neuroscience and behavior science", "Clinical medicine",
                {"Neuroscience & behavior"});
    reg.add_esi("Pharmacology and toxicology", "Clinical medicine");
    reg.add_esi("Physics", "Physics");
    reg.add_esi("Plant and animal science", "Biology",
                {"Plant and animal sciences", "Plant & animal science"});
    reg.add_esi("Psychiatry and psychology", "Clinical medicine",
                {"Psychiatry/psychology"});
    reg.add_esi("Social sciences", "Social/behavioral sciences",
                {"Social sciences, general"});
    reg.add_esi("Space science", "Earth and space sciences", {"Space sciences"});
    return reg;
  }();
  return r;
}

}  // namespace

const std::string& base_nsf_field() {
  static const std::string base = "Mathematics";
  return base;
}

const std::vector<std::string>& esi_universe() { return registry().esi; }
const std::vector<std::string>& nsf_universe() { return registry().nsf; }

std::optional<std::string> canonical_esi(std::string_view raw) {
  const auto& aliases = registry().esi_aliases;
  auto it = aliases.find(field_key(raw));
  if (it == aliases.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> canonical_nsf(std::string_view raw) {
  const auto& aliases = registry().nsf_aliases;
  auto it = aliases.find(field_key(raw));
  if (it == aliases.end()) return std::nullopt;
  return it->second;
}

const std::map<std::string, std::string>& default_mapping() {
  return registry().mapping;
}

const std::map<std::string, std::int64_t>& reference_t_ratios() {
  static const std::map<std::string, std::int64_t> t = {
      {"Biology", 8},
      {"Biomedical research", 78},
      {"Chemistry", 15},
      {"Clinical medicine", 78},
      {"Earth and space sciences", 9},
      {"Engineering and technology", 5},
      {"Mathematics", 1},
      {"Physics", 19},
      {"Social/behavioral sciences", 13},
  };
  return t;
}

const std::vector<std::tuple<std::string, std::int64_t, std::int64_t>>&
reference_th_pairs() {
  static const std::vector<std::tuple<std::string, std::int64_t, std::int64_t>>
      pairs = {
          {"Mathematics", 1, 1},
          {"Engineering and technology", 5, 3},
          {"Biology", 8, 5},
          {"Earth and space sciences", 9, 6},
          {"Social/behavioral sciences", 13, 9},
          {"Chemistry", 15, 10},
          {"Physics", 19, 12},
          {"Clinical medicine", 78, 37},
      };
  return pairs;
}

const std::map<std::string, Rational>& table2_divisors() {
  static const std::map<std::string, Rational> d = [] {
    const std::map<std::string, std::int64_t> h = {
        {"Biology", 5},
        {"Biomedical research", 37},
        {"Chemistry", 10},
        {"Clinical medicine", 37},
        {"Earth and space sciences", 6},
        {"Engineering and technology", 3},
        {"Mathematics", 1},
        {"Physics", 12},
        {"Social/behavioral sciences", 9},
    };
    std::map<std::string, Rational> out;
    for (const auto& [esi, nsf] : default_mapping()) {
      out.emplace(esi, Rational(h.at(nsf)));
    }
    return out;
  }();
  return d;
}

const std::map<std::string, Rational>& appendix_divisors() {
  static const std::map<std::string, Rational> d = [] {
    std::map<std::string, Rational> out;
    for (const auto& [esi, nsf] : default_mapping()) {
      std::int64_t t = reference_t_ratios().at(nsf);
      if (t == 1) {
        out.emplace(esi, Rational(1));
      } else if (t == 78) {
        out.emplace(esi, Rational(39));
      } else {
        out.emplace(esi, Rational(2 * t, 3));
      }
    }
    // The reference list normalizes this field with its biology-group level,
    // not with its mapped earth/space group.
    out.insert_or_assign("Environment and ecology", Rational(16, 3));
    return out;
  }();
  return d;
}

}  // namespace citerank::fields
