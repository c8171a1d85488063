#include "ccmul/errors.hpp"

namespace ccmul {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_prime_characteristic: return "NonPrimeCharacteristic";
    case errc::reducible_modulus: return "ReducibleModulus";
    case errc::no_irreducible_found: return "NoIrreducibleFound";
    case errc::mixed_fields: return "MixedFields";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::non_monic: return "NonMonic";
    case errc::reducible_local_parameter: return "ReducibleLocalParameter";
    case errc::pole_at_place: return "PoleAtPlace";
    case errc::unsupported_base: return "UnsupportedBase";
    case errc::insufficient_places: return "InsufficientPlaces";
    case errc::conditions_not_met: return "ConditionsNotMet";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::step_too_small: return "StepTooSmall";
    case errc::out_of_range: return "OutOfRange";
    case errc::no_data_for_n: return "NoDataForN";
    case errc::schema_error: return "SchemaError";
  }
  return "UnknownError";
}

}  // namespace ccmul
