#pragma once

#include <string>
#include <vector>

#include "igac/types.hpp"

namespace igac {

/// Fixed numeric formatting for every emitted artifact: up to 17 significant
/// digits (round-trip exact for doubles), identical across runs and worker
/// counts.
std::string format_number(double v);

/// Minimal JSON writer with insertion-ordered keys and format_number for
/// doubles, so emitted files are byte-stable.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key);
  JsonWriter& begin_object(const std::string& key);
  JsonWriter& end_array();
  JsonWriter& field(const std::string& key, double v);
  JsonWriter& field(const std::string& key, long long v);
  JsonWriter& field(const std::string& key, int v) { return field(key, static_cast<long long>(v)); }
  JsonWriter& field(const std::string& key, uint64_t v);
  JsonWriter& field(const std::string& key, bool v);
  JsonWriter& field(const std::string& key, const std::string& v);
  JsonWriter& field(const std::string& key, const std::vector<double>& v);
  JsonWriter& element(double v);
  std::string str() const { return out_; }

 private:
  void comma();
  void key(const std::string& k);
  static std::string escape(const std::string& s);
  std::string out_;
  std::vector<bool> first_in_scope_;
};

/// Writes a CSV with the given header and rows, "\n" line endings.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

std::string csv_to_string(const std::string& header,
                          const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit hash; used for config provenance.
uint64_t fnv1a(const std::string& data);

std::string hex64(uint64_t v);

}  // namespace igac
