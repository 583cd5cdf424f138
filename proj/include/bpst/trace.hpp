#pragma once

#include <set>
#include <string>
#include <vector>

namespace bpst {

/// Ordered log of pipeline decisions. Each line starts with its label so that
/// coverage checks can grep for it; the label set is kept alongside.
class Trace {
 public:
  void add(const std::string& label, const std::string& detail) {
    lines_.push_back(detail.empty() ? label : label + " " + detail);
    labels_.insert(label);
  }

  bool has(const std::string& label) const { return labels_.count(label) != 0; }
  const std::vector<std::string>& lines() const { return lines_; }
  const std::set<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> lines_;
  std::set<std::string> labels_;
};

}  // namespace bpst
