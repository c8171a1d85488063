#pragma once

#include <stdexcept>
#include <string>

namespace ccmul {

enum class errc {
  non_prime_characteristic,
  reducible_modulus,
  no_irreducible_found,
  mixed_fields,
  division_by_zero,
  non_monic,
  reducible_local_parameter,
  pole_at_place,
  unsupported_base,
  insufficient_places,
  conditions_not_met,
  field_mismatch,
  step_too_small,
  out_of_range,
  no_data_for_n,
  schema_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace ccmul
