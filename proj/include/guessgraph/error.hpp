#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace guessgraph {

// Every failure raised by the library carries one of these codes.
enum class Errc {
  loop_edge,
  vertex_out_of_range,
  bad_params,
  size_guard,
  alphabet_mismatch,
  not_independent,
  non_prime_field,
  division_by_zero_poly,
  bad_generator,
  not_acyclic,
  self_demand_loop,
  invalid_instance,
  parse_error,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::loop_edge: return "LoopEdge";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::bad_params: return "BadParams";
    case Errc::size_guard: return "SizeGuard";
    case Errc::alphabet_mismatch: return "AlphabetMismatch";
    case Errc::not_independent: return "NotIndependent";
    case Errc::non_prime_field: return "NonPrimeField";
    case Errc::division_by_zero_poly: return "DivisionByZeroPoly";
    case Errc::bad_generator: return "BadGenerator";
    case Errc::not_acyclic: return "NotAcyclic";
    case Errc::self_demand_loop: return "SelfDemandLoop";
    case Errc::invalid_instance: return "InvalidInstance";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace guessgraph
