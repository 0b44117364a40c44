#include "steinergap/guards.hpp"

#include <climits>
#include <cstdlib>
#include <sstream>

namespace steinergap {

namespace {

Guards& storage() {
  static Guards g = [] {
    const char* env = std::getenv("STEINERGAP_GUARDS");
    return env ? parse_guards(env) : Guards{};
  }();
  return g;
}

}  // namespace

Guards parse_guards(const std::string& spec) {
  Guards g;
  if (spec == "off") {
    g.integer_solutions_max_n = g.bcr_integer_max_n = g.enum_max_m = INT_MAX;
    g.enum_max_rows = g.otc_max_n = g.stp_brute_max_n = g.dw_max_t = INT_MAX;
    g.gap_max_rounds = INT_MAX;
    return g;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad guard entry: " + item);
    std::string key = item.substr(0, eq);
    int value = std::stoi(item.substr(eq + 1));
    if (key == "integer_n") {
      g.integer_solutions_max_n = value;
    } else if (key == "bcr_integer_n") {
      g.bcr_integer_max_n = value;
    } else if (key == "enum_m") {
      g.enum_max_m = value;
    } else if (key == "enum_rows") {
      g.enum_max_rows = value;
    } else if (key == "otc_n") {
      g.otc_max_n = value;
    } else if (key == "brute_n") {
      g.stp_brute_max_n = value;
    } else if (key == "dw_t") {
      g.dw_max_t = value;
    } else if (key == "gap_rounds") {
      g.gap_max_rounds = value;
    } else {
      throw std::invalid_argument("unknown guard: " + key);
    }
  }
  return g;
}

const Guards& guards() { return storage(); }

void set_guards(const Guards& g) { storage() = g; }

void check_guard(const char* name, long value, long limit, const std::string& what) {
  if (value > limit) {
    throw GuardError(what + " exceeds " + name + "=" + std::to_string(limit) +
                     " (got " + std::to_string(value) + "); relax with STEINERGAP_GUARDS");
  }
}

}  // namespace steinergap
