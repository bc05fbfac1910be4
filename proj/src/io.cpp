#include "slidekit/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "slidekit/error.hpp"

namespace slidekit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for " + path);
}

namespace {

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config_parse, where + ": " + e.what());
  }
}

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int k = 0; k < 8; ++k) r |= ((v >> (8 * k)) & 0xffu) << (8 * (7 - k));
    return r;
  }
  return v;
}

// Radius r such that the domain is exactly the closed ball B_r(0), or -1.
double ball_radius_of(const Mask& d) {
  const Grid& g = d.grid();
  double r2 = -1;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (d[i]) r2 = std::max(r2, dot(g.point(i), g.point(i)));
  if (r2 < 0) return -1;
  // prefer round radii so the header stays readable
  for (double r : {1.0, std::sqrt(r2)})
    if (Mask::ball(g, Point{}, r) == d) return r;
  return -1;
}

}  // namespace

void write_grid_function(const std::string& path, const GridFunction& u, Encoding enc) {
  const Grid& g = u.grid();
  const fs::path p(path);
  const std::string payload = p.stem().string() + (enc == Encoding::csv ? ".csv" : ".f64");
  const fs::path payload_path = p.parent_path() / payload;

  json head;
  head["dim"] = g.dim();
  head["resolution"] = g.resolution();
  const double r = ball_radius_of(u.domain());
  if (r > 0) {
    head["radius"] = r;
  } else {
    head["radius"] = nullptr;
    head["domain_indices"] = u.domain().indices();
  }
  head["encoding"] = enc == Encoding::csv ? "csv" : "f64le";
  head["payload"] = payload;
  write_text_file(path, head.dump(2) + "\n");

  if (enc == Encoding::csv) {
    std::string out;
    char buf[40];
    const std::size_t line = static_cast<std::size_t>(g.resolution());
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", u[i]);
      out += buf;
      out += (i + 1) % line == 0 ? '\n' : ',';
    }
    write_text_file(payload_path.string(), out);
  } else {
    std::string out(g.size() * 8, '\0');
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::uint64_t bits = to_le(std::bit_cast<std::uint64_t>(u[i]));
      std::memcpy(out.data() + 8 * i, &bits, 8);
    }
    write_text_file(payload_path.string(), out);
  }
}

GridFunction read_grid_function(const std::string& path) {
  const json head = parse_json(read_text_file(path), path);
  Grid g;
  std::string enc, payload;
  try {
    g = Grid(head.at("dim").get<int>(), head.at("resolution").get<int>());
    enc = head.value("encoding", "f64le");
    payload = head.at("payload").get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorKind::config_parse, path + ": " + e.what());
  }
  Mask domain(g);
  if (head.contains("radius") && head["radius"].is_number()) {
    domain = Mask::ball(g, Point{}, head["radius"].get<double>());
  } else if (head.contains("domain_indices")) {
    for (auto i : head["domain_indices"]) domain.set(i.get<std::size_t>(), true);
  } else {
    domain = Mask::unit_ball(g);
  }

  const fs::path payload_path = fs::path(path).parent_path() / payload;
  const std::string raw = read_text_file(payload_path.string());
  std::vector<double> v(g.size());
  if (enc == "f64le") {
    if (raw.size() != 8 * g.size()) fail(ErrorKind::io, payload_path.string() + ": payload size mismatch");
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::uint64_t bits;
      std::memcpy(&bits, raw.data() + 8 * i, 8);
      v[i] = std::bit_cast<double>(to_le(bits));
    }
  } else if (enc == "csv") {
    std::size_t k = 0;
    const char* s = raw.c_str();
    char* end = nullptr;
    while (k < g.size()) {
      while (*s == ',' || *s == '\n' || *s == '\r' || *s == ' ') ++s;
      if (*s == '\0') break;
      v[k++] = std::strtod(s, &end);
      if (end == s) fail(ErrorKind::io, payload_path.string() + ": malformed number");
      s = end;
    }
    if (k != g.size()) fail(ErrorKind::io, payload_path.string() + ": expected " + std::to_string(g.size()) + " values");
  } else {
    fail(ErrorKind::config_parse, path + ": unknown encoding '" + enc + "'");
  }
  return GridFunction(g, std::move(v), std::move(domain));
}

Mask read_mask(const std::string& path, const Grid& g) {
  const json j = parse_json(read_text_file(path), path);
  Mask m(g);
  try {
    if (j.contains("balls")) {
      for (const auto& b : j["balls"]) {
        Point c{};
        const auto cs = b.at("center").get<std::vector<double>>();
        for (std::size_t a = 0; a < cs.size() && a < 3; ++a) c[a] = cs[a];
        m = m | Mask::ball(g, c, b.at("radius").get<double>());
      }
    }
    if (j.contains("indices")) {
      for (const auto& i : j["indices"]) {
        const auto k = i.get<std::size_t>();
        if (k >= g.size()) fail(ErrorKind::config_parse, path + ": index out of range");
        m.set(k, true);
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::config_parse, path + ": " + e.what());
  }
  return m;
}

void write_mask(const std::string& path, const Mask& m) {
  json j;
  j["dim"] = m.grid().dim();
  j["resolution"] = m.grid().resolution();
  j["indices"] = m.indices();
  write_text_file(path, j.dump() + "\n");
}

}  // namespace slidekit
