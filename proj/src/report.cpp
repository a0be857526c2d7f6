#include "rybsign/report.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace rybsign {

ReportSection& Report::section(const std::string& name) {
  for (auto& s : sections_)
    if (s.name == name) return s;
  sections_.push_back({name, {}, {}});
  return sections_.back();
}

void Report::add(const std::string& section_name, ReportItem item) {
  section(section_name).items.push_back(std::move(item));
}

void Report::note(const std::string& section_name, const std::string& text) {
  section(section_name).notes.push_back(text);
}

std::string percent_text(double percent, int decimals) {
  return fmt::format("{:+.{}f}%", percent, decimals);
}

std::string number_text(double v) { return fmt::format("{:.6g}", v); }

namespace {

std::string display_of(const ReportItem& item) {
  if (!item.display.empty()) return item.display;
  const auto& v = item.value;
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return number_text(v.get<double>());
  return v.dump();
}

}  // namespace

std::string Report::to_text() const {
  std::string out = title_ + "\n" + std::string(title_.size(), '=') + "\n";
  for (const auto& s : sections_) {
    out += "\n" + s.name + "\n" + std::string(s.name.size(), '-') + "\n";
    std::size_t width = 0;
    for (const auto& item : s.items) width = std::max(width, item.key.size());
    for (const auto& item : s.items) {
      out += fmt::format("  {:<{}}  {}", item.key, width, display_of(item));
      if (!item.relation.empty())
        out += fmt::format("  [{}; {}]", item.provenance, item.relation);
      else if (!item.provenance.empty())
        out += fmt::format("  [{}]", item.provenance);
      out += "\n";
    }
    for (const auto& n : s.notes) out += "  note: " + n + "\n";
  }
  out += "\nstatus: " + status_ + "\n";
  return out;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["title"] = title_;
  doc["status"] = status_;
  doc["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : sections_) {
    nlohmann::ordered_json sec;
    sec["name"] = s.name;
    sec["items"] = nlohmann::ordered_json::array();
    for (const auto& item : s.items) {
      nlohmann::ordered_json j;
      j["key"] = item.key;
      j["value"] = item.value;
      j["provenance"] = item.provenance;
      j["relation"] = item.relation;
      sec["items"].push_back(std::move(j));
    }
    if (!s.notes.empty()) sec["notes"] = s.notes;
    doc["sections"].push_back(std::move(sec));
  }
  return doc;
}

}  // namespace rybsign
