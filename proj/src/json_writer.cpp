#include "harsanyi/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace harsanyi {

namespace {

void write_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

template <typename Json>
void write(std::string& out, const Json& j, int indent, int depth) {
  using value_t = typename Json::value_t;
  switch (j.type()) {
    case value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, depth + 1);
      }
      newline(out, indent, depth);
      out += '}';
      return;
    }
    case value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& element : j) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        write(out, element, indent, depth + 1);
      }
      newline(out, indent, depth);
      out += ']';
      return;
    }
    case value_t::number_float:
      write_double(out, j.template get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

}  // namespace harsanyi
