#include "turan/report.hpp"

#include <cmath>
#include <cstdio>

namespace turan::report {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// doubles that are not finite cannot be JSON numbers
std::string json_number(double v) {
  if (std::isnan(v) || std::isinf(v)) return "\"" + format_double(v) + "\"";
  return format_double(v);
}

void indent_to(std::string& out, int n) { out.append(n, ' '); }

}  // namespace

struct Node::Entry {
  enum class Kind { number, integer, boolean, text, vec, ivec, object, array };
  std::string key;
  Kind kind;
  double num = 0.0;
  long long inum = 0;
  bool bval = false;
  std::string sval;
  std::vector<double> vec;
  std::vector<int> ivec;
  std::shared_ptr<Node> object;            // child object
  std::vector<std::shared_ptr<Node>> arr;  // array of objects
  bool json_only = false;
};

Node::Node() = default;
Node::Node(Node&&) noexcept = default;
Node& Node::operator=(Node&&) noexcept = default;
Node::~Node() = default;

void Node::put(std::string_view key, double v) {
  Entry e;
  e.key = key;
  e.kind = Entry::Kind::number;
  e.num = v;
  entries_.push_back(std::move(e));
}

void Node::put(std::string_view key, long long v) {
  Entry e;
  e.key = key;
  e.kind = Entry::Kind::integer;
  e.inum = v;
  entries_.push_back(std::move(e));
}

void Node::put(std::string_view key, bool v) {
  Entry e;
  e.key = key;
  e.kind = Entry::Kind::boolean;
  e.bval = v;
  entries_.push_back(std::move(e));
}

void Node::put(std::string_view key, std::string_view v) {
  Entry e;
  e.key = key;
  e.kind = Entry::Kind::text;
  e.sval = v;
  entries_.push_back(std::move(e));
}

void Node::put_vector(std::string_view key, std::span<const double> v,
                      bool json_only) {
  Entry e;
  e.key = key;
  e.kind = Entry::Kind::vec;
  e.vec.assign(v.begin(), v.end());
  e.json_only = json_only;
  entries_.push_back(std::move(e));
}

void Node::put_vector(std::string_view key, std::span<const int> v,
                      bool json_only) {
  Entry e;
  e.key = key;
  e.kind = Entry::Kind::ivec;
  e.ivec.assign(v.begin(), v.end());
  e.json_only = json_only;
  entries_.push_back(std::move(e));
}

Node& Node::child(std::string_view key) {
  Entry e;
  e.key = key;
  e.kind = Entry::Kind::object;
  e.object = std::make_shared<Node>();
  entries_.push_back(std::move(e));
  return *entries_.back().object;
}

Node& Node::append(std::string_view arr_key) {
  for (auto& e : entries_) {
    if (e.kind == Entry::Kind::array && e.key == arr_key) {
      e.arr.push_back(std::make_shared<Node>());
      return *e.arr.back();
    }
  }
  Entry e;
  e.key = arr_key;
  e.kind = Entry::Kind::array;
  e.arr.push_back(std::make_shared<Node>());
  entries_.push_back(std::move(e));
  return *entries_.back().arr.back();
}

void Node::write_json(std::string& out, int ind) const {
  out += "{\n";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    indent_to(out, ind + 2);
    out += "\"" + json_escape(e.key) + "\": ";
    switch (e.kind) {
      case Entry::Kind::number: out += json_number(e.num); break;
      case Entry::Kind::integer: out += std::to_string(e.inum); break;
      case Entry::Kind::boolean: out += e.bval ? "true" : "false"; break;
      case Entry::Kind::text: out += "\"" + json_escape(e.sval) + "\""; break;
      case Entry::Kind::vec: {
        out += "[";
        for (std::size_t j = 0; j < e.vec.size(); ++j)
          out += (j ? ", " : "") + json_number(e.vec[j]);
        out += "]";
        break;
      }
      case Entry::Kind::ivec: {
        out += "[";
        for (std::size_t j = 0; j < e.ivec.size(); ++j)
          out += (j ? ", " : "") + std::to_string(e.ivec[j]);
        out += "]";
        break;
      }
      case Entry::Kind::object:
        e.object->write_json(out, ind + 2);
        break;
      case Entry::Kind::array: {
        out += "[";
        for (std::size_t j = 0; j < e.arr.size(); ++j) {
          out += j ? ", " : "";
          e.arr[j]->write_json(out, ind + 2);
        }
        out += "]";
        break;
      }
    }
    out += i + 1 < entries_.size() ? ",\n" : "\n";
  }
  indent_to(out, ind);
  out += "}";
}

void Node::write_text(std::string& out, int ind) const {
  for (const Entry& e : entries_) {
    if (e.json_only) continue;
    switch (e.kind) {
      case Entry::Kind::object:
        indent_to(out, ind);
        out += e.key + ":\n";
        e.object->write_text(out, ind + 2);
        break;
      case Entry::Kind::array:
        for (std::size_t j = 0; j < e.arr.size(); ++j) {
          indent_to(out, ind);
          out += e.key + "[" + std::to_string(j) + "]:\n";
          e.arr[j]->write_text(out, ind + 2);
        }
        break;
      default: {
        indent_to(out, ind);
        out += e.key + " = ";
        switch (e.kind) {
          case Entry::Kind::number: out += format_double(e.num); break;
          case Entry::Kind::integer: out += std::to_string(e.inum); break;
          case Entry::Kind::boolean: out += e.bval ? "true" : "false"; break;
          case Entry::Kind::text: out += e.sval; break;
          case Entry::Kind::vec:
            for (std::size_t j = 0; j < e.vec.size(); ++j)
              out += (j ? " " : "") + format_double(e.vec[j]);
            break;
          case Entry::Kind::ivec:
            for (std::size_t j = 0; j < e.ivec.size(); ++j)
              out += (j ? " " : "") + std::to_string(e.ivec[j]);
            break;
          default: break;
        }
        out += "\n";
      }
    }
  }
}

Report::Report(std::string_view command) {
  root_.put("schema_version", 1);
  root_.put("command", command);
}

std::string Report::json() const {
  std::string out;
  root_.write_json(out, 0);
  out += "\n";
  return out;
}

std::string Report::text() const {
  std::string out;
  root_.write_text(out, 0);
  return out;
}

}  // namespace turan::report
