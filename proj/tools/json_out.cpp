#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lgram::cli {

namespace {

void write_string(std::string& out, const std::string& s) {
  // nlohmann's escaping, without re-implementing it
  out += nlohmann::json(s).dump();
}

void write_double(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  out.append(buf.data(), res.ptr);
}

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void write(std::string& out, const nlohmann::json& j, int indent, int depth) {
  using value_t = nlohmann::json::value_t;
  switch (j.type()) {
    case value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        write_string(out, key);
        out += indent < 0 ? ":" : ": ";
        write(out, value, indent, depth + 1);
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
      // arrays of numbers stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& e) { return e.is_number(); });
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(out, indent, depth + 1);
        write(out, value, indent, depth + 1);
      }
      if (!flat) newline(out, indent, depth);
      out += ']';
      return;
    }
    case value_t::number_float:
      write_double(out, j.get<double>());
      return;
    case value_t::string:
      write_string(out, j.get<std::string>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump(const nlohmann::json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

}  // namespace lgram::cli
