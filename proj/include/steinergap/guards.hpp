#pragma once

#include <stdexcept>
#include <string>

namespace steinergap {

// Desk-scale limits. STEINERGAP_GUARDS relaxes them: "off" disables every
// guard, "key=value,..." overrides single limits (keys as below).
struct Guards {
  int integer_solutions_max_n = 8;  // integer_n
  int bcr_integer_max_n = 5;        // bcr_integer_n
  int enum_max_m = 40;              // enum_m
  int enum_max_rows = 5000;         // enum_rows
  int otc_max_n = 8;                // otc_n
  int stp_brute_max_n = 10;         // brute_n
  int dw_max_t = 12;                // dw_t
  int gap_max_rounds = 10000;       // gap_rounds
};

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const Guards& guards();
Guards parse_guards(const std::string& spec);
void set_guards(const Guards& g);

// Throws GuardError("<what> exceeds <name>=<limit>") when value > limit.
void check_guard(const char* name, long value, long limit, const std::string& what);

}  // namespace steinergap
