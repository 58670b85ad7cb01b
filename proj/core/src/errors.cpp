#include "bosim/errors.hpp"

namespace bosim {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::size_mismatch:
      return "size_mismatch";
    case errc::capacity:
      return "capacity";
    case errc::lookup:
      return "lookup";
    case errc::domain:
      return "domain";
    case errc::layout:
      return "layout";
    case errc::ordering:
      return "ordering";
    case errc::validation:
      return "validation";
    case errc::redundancy:
      return "redundancy";
    case errc::degenerate_distribution:
      return "degenerate_distribution";
    case errc::collision:
      return "collision";
    case errc::parse:
      return "parse";
  }
  return "unknown";
}

error::error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void fail(errc code, const std::string& message) { throw error(code, message); }

}  // namespace bosim
