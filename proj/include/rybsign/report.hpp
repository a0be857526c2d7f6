#pragma once

// Sectioned report rendered as aligned text or as a JSON document. Every
// item carries a provenance tag and the relation that produced it.

#include <json.hpp>
#include <string>
#include <vector>

namespace rybsign {

/// Provenance tags used in reports.
namespace tag {
inline constexpr const char* kPublished = "published";
inline constexpr const char* kReconstructed = "reconstructed";
inline constexpr const char* kAssumed = "assumed";
inline constexpr const char* kConfigured = "configured";
inline constexpr const char* kComputed = "computed";
}  // namespace tag

struct ReportItem {
  std::string key;
  nlohmann::ordered_json value;
  std::string display;  // text rendering; derived from `value` when empty
  std::string provenance;
  std::string relation;
};

struct ReportSection {
  std::string name;
  std::vector<ReportItem> items;
  std::vector<std::string> notes;
};

class Report {
 public:
  explicit Report(std::string title) : title_(std::move(title)) {}

  ReportSection& section(const std::string& name);
  void add(const std::string& section_name, ReportItem item);
  void note(const std::string& section_name, const std::string& text);
  void set_status(const std::string& status) { status_ = status; }

  const std::string& title() const { return title_; }
  const std::vector<ReportSection>& sections() const { return sections_; }

  std::string to_text() const;
  nlohmann::ordered_json to_json() const;

 private:
  std::string title_;
  std::string status_ = "ok";
  std::vector<ReportSection> sections_;
};

/// "176.60%".
std::string percent_text(double percent, int decimals = 2);
/// Six significant digits.
std::string number_text(double v);

}  // namespace rybsign
