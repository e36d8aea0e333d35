#ifndef GEVREY_BBM_CONFIG_H_
#define GEVREY_BBM_CONFIG_H_

// Flat key = value text files.
//
//   # comment
//   [section]
//   key = value
//
// Sections only group keys for the reader; every key must be unique across
// the whole file. Parse errors and lookups of malformed values throw
// InvalidInput.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gevrey_bbm {

class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text, const std::string& origin = "<string>");
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);
  const std::string& get(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  std::uint64_t get_uint64(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma-separated list of reals.
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  // Keys in sorted order, one per line; no sections.
  std::string serialize() const;
  void save(const std::string& path) const;

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& key, const std::string& text);
long parse_int(const std::string& key, const std::string& text);

}  // namespace gevrey_bbm

#endif  // GEVREY_BBM_CONFIG_H_
