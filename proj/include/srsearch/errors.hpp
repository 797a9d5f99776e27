#pragma once

#include <stdexcept>
#include <string>

namespace srsearch {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  /// Short machine-readable name, e.g. "EventLimitExceeded".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SRSEARCH_DEFINE_ERROR(Name)                                     \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  }

SRSEARCH_DEFINE_ERROR(InvalidParam);
SRSEARCH_DEFINE_ERROR(DomainError);
SRSEARCH_DEFINE_ERROR(EventLimitExceeded);
SRSEARCH_DEFINE_ERROR(IllegalStrategy);
SRSEARCH_DEFINE_ERROR(NoCapturePossible);
SRSEARCH_DEFINE_ERROR(PrefixTooShort);

#undef SRSEARCH_DEFINE_ERROR

/// Rethrows e as the same concrete type with extra context appended.
[[noreturn]] inline void rethrow_with(const Error& e, const std::string& context) {
  const std::string what = std::string(e.what()) + " [" + context + "]";
  const std::string& k = e.kind();
  if (k == "InvalidParam") throw InvalidParam(what);
  if (k == "DomainError") throw DomainError(what);
  if (k == "EventLimitExceeded") throw EventLimitExceeded(what);
  if (k == "IllegalStrategy") throw IllegalStrategy(what);
  if (k == "NoCapturePossible") throw NoCapturePossible(what);
  if (k == "PrefixTooShort") throw PrefixTooShort(what);
  throw Error(k, what);
}

}  // namespace srsearch
