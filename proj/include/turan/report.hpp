#pragma once
// Machine-readable run reports. Fields keep insertion order and all floats
// are formatted with 12 significant digits, so identical runs produce
// byte-identical documents.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace turan::report {

std::string format_double(double v);  // %.12g with stable inf/nan spelling

class Node {
 public:
  Node();
  Node(Node&&) noexcept;
  Node& operator=(Node&&) noexcept;
  ~Node();

  void put(std::string_view key, double v);
  void put(std::string_view key, long long v);
  void put(std::string_view key, int v) { put(key, static_cast<long long>(v)); }
  void put(std::string_view key, bool v);
  void put(std::string_view key, std::string_view v);
  void put(std::string_view key, const char* v) { put(key, std::string_view(v)); }
  // json_only entries are kept out of the human-readable text rendering
  void put_vector(std::string_view key, std::span<const double> v,
                  bool json_only = false);
  void put_vector(std::string_view key, std::span<const int> v,
                  bool json_only = false);
  Node& child(std::string_view key);        // nested object
  Node& append(std::string_view arr_key);   // object appended to an array

  void write_json(std::string& out, int indent) const;
  void write_text(std::string& out, int indent) const;

 private:
  struct Entry;
  std::vector<Entry> entries_;
};

class Report {
 public:
  explicit Report(std::string_view command);
  Node& root() { return root_; }
  std::string json() const;
  std::string text() const;  // human-readable key = value lines

 private:
  Node root_;
};

}  // namespace turan::report
