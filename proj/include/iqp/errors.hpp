#pragma once

#include <stdexcept>
#include <string>

namespace iqp {

enum class ErrorKind { Schema, Domain, Resource, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)), message_(what) {}
  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  std::string code_;
  std::string message_;
};

inline Error schema_error(const std::string& what) {
  return Error(ErrorKind::Schema, "SchemaError", what);
}
inline Error domain_error(const std::string& code, const std::string& what) {
  return Error(ErrorKind::Domain, code, what);
}
inline Error resource_error(const std::string& what) {
  return Error(ErrorKind::Resource, "ResourceBound", what);
}
inline Error internal_error(const std::string& code, const std::string& what) {
  return Error(ErrorKind::Internal, code, what);
}

}  // namespace iqp
