#pragma once

#include "exploded/number.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace exploded {

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;      ///< short machine-readable tag, e.g. "missing-inclusion"
  std::string subject;   ///< offending stratum / face / vertex id
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.severity == b.severity && a.code == b.code && a.subject == b.subject && a.message == b.message;
  }
};

/// Collected diagnostics of a validation pass.  Valid iff no errors.
class ValidationReport {
 public:
  void error(std::string code, std::string subject, std::string message) {
    items_.push_back({Severity::Error, std::move(code), std::move(subject), std::move(message)});
  }
  void warning(std::string code, std::string subject, std::string message) {
    items_.push_back({Severity::Warning, std::move(code), std::move(subject), std::move(message)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = "") {
    for (auto d : other.items_) {
      if (!prefix.empty()) d.message = prefix + d.message;
      items_.push_back(std::move(d));
    }
  }

  bool ok() const { return error_count() == 0; }
  explicit operator bool() const { return ok(); }

  std::size_t error_count() const {
    std::size_t n = 0;
    for (const auto& d : items_) n += d.severity == Severity::Error;
    return n;
  }
  std::size_t warning_count() const { return items_.size() - error_count(); }

  bool has(const std::string& code) const {
    for (const auto& d : items_)
      if (d.code == code) return true;
    return false;
  }

  const std::vector<Diagnostic>& diagnostics() const { return items_; }

  friend std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
    if (r.items_.empty()) return os << "ok\n";
    for (const auto& d : r.items_)
      os << (d.severity == Severity::Error ? "error " : "warning ") << d.code << " [" << d.subject << "] " << d.message
         << "\n";
    return os;
  }

 private:
  std::vector<Diagnostic> items_;
};

/// Thrown by operations whose precondition is a passing validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error(describe(report)), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  static std::string describe(const ValidationReport& r) {
    for (const auto& d : r.diagnostics())
      if (d.severity == Severity::Error) return "validation failed: " + d.code + " [" + d.subject + "] " + d.message;
    return "validation failed";
  }
  ValidationReport report_;
};

}  // namespace exploded
