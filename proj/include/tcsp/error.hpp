#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two operands live in braid groups with different strand counts.
class StrandMismatch : public Error {
 public:
  StrandMismatch(int lhs, int rhs)
      : Error("strand-count mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

// A caller broke an operation's precondition (bad parameters, same-side
// key exchange, out-of-range generator index, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Tag verification failed: forged, truncated or mis-keyed ciphertext.
class AuthenticationError : public Error {
 public:
  using Error::Error;
};

// Malformed frame, unexpected message, short stream or failed key
// confirmation during key exchange.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// The peer's key-confirmation tag did not match: tampering or a parameter
// mismatch between the parties.
class KeyAgreementError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error("parse error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace tcsp
