// Error model: every domain failure carries a stable kind string that the CLI
// surfaces verbatim in its error JSON.
#pragma once

#include <stdexcept>
#include <string>

namespace logchow {

class DomainError : public std::runtime_error {
public:
  DomainError(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)),
        detail_(std::move(detail)) {}

  const std::string &kind() const { return kind_; }
  const std::string &detail() const { return detail_; }

private:
  std::string kind_;
  std::string detail_;
};

namespace errkind {
inline constexpr const char *MissingVariable = "MissingVariable";
inline constexpr const char *NotDivisible = "NotDivisible";
inline constexpr const char *UnknownObject = "UnknownObject";
inline constexpr const char *NotEmbedded = "NotEmbedded";
inline constexpr const char *AsymmetricSubdivision = "AsymmetricSubdivision";
inline constexpr const char *NotInterior = "NotInterior";
inline constexpr const char *NotSmooth = "NotSmooth";
inline constexpr const char *Unstable = "Unstable";
inline constexpr const char *TypeMismatch = "TypeMismatch";
inline constexpr const char *StackMismatch = "StackMismatch";
inline constexpr const char *NotRelDimZero = "NotRelDimZero";
inline constexpr const char *HistoryMismatch = "HistoryMismatch";
inline constexpr const char *DecorationNotTrivial = "DecorationNotTrivial";
} // namespace errkind

[[noreturn]] inline void fail(const char *kind, const std::string &detail) {
  throw DomainError(kind, detail);
}

// Internal consistency check; failures indicate a bug, not bad input.
inline void require(bool cond, const std::string &what) {
  if (!cond)
    throw std::logic_error("internal invariant violated: " + what);
}

} // namespace logchow
