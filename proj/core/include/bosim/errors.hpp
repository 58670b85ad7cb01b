#pragma once

#include <stdexcept>
#include <string>

namespace bosim {

/// Failure categories used across the library. Every thrown error carries one,
/// so callers can distinguish e.g. a capacity refusal from a malformed input
/// without parsing message text.
enum class errc {
  size_mismatch,            ///< dimensions/lengths incompatible with the operation
  capacity,                 ///< input exceeds a documented desk-scale cap
  lookup,                   ///< unknown row/column label or missing key
  domain,                   ///< argument outside the operation's domain
  layout,                   ///< gate/layer arrangement inconsistent
  ordering,                 ///< dependency evaluated out of order (child table missing)
  validation,               ///< tree decomposition violates an axiom
  redundancy,               ///< node does not satisfy the redundant-node precondition
  degenerate_distribution,  ///< all sampling weights are zero
  collision,                ///< repeated mode where distinct modes are required
  parse,                    ///< malformed file or document
};

/// Name of an error category, for messages and logs.
const char* errc_name(errc code) noexcept;

/// Library exception type: std::runtime_error plus a machine-readable code.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message);
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Throws bosim::error with the given code and message.
[[noreturn]] void fail(errc code, const std::string& message);

}  // namespace bosim
