#pragma once

// Persistence: binary PPM images, network JSON, raw float/int grids with
// JSON metadata, CSV exports and complex-number flag parsing.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadnet/ensemble.hpp"
#include "quadnet/raster.hpp"
#include "quadnet/topology.hpp"

namespace quadnet {

// Configuration error carrying the JSON-pointer-style path of the bad field.
struct ConfigError : std::runtime_error {
  std::string path;
  ConfigError(std::string p, const std::string& msg)
      : std::runtime_error(p + ": " + msg), path(std::move(p)) {}
};

enum class Palette { grayscale, banded };

namespace detail {

inline void put_rgb(std::string& buf, int r, int g, int b) {
  buf.push_back(static_cast<char>(r));
  buf.push_back(static_cast<char>(g));
  buf.push_back(static_cast<char>(b));
}

// fixed band table for the banded palette
inline constexpr int kBands[8][3] = {{66, 30, 15},   {25, 7, 26},    {9, 1, 47},
                                     {4, 4, 73},     {0, 7, 100},    {12, 44, 138},
                                     {24, 82, 177},  {211, 236, 248}};

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace detail

// Binary P6 PPM. Bounded pixels are black; grayscale maps t = iter/K to
// channel round(255 * (1 - t)) on all three channels.
inline void write_ppm(const EscapeRaster& r, Palette palette, const std::string& path) {
  std::string buf;
  buf.reserve(static_cast<std::size_t>(r.grid.pixel_count()) * 3 + 64);
  buf += "P6\n" + std::to_string(r.grid.width) + " " + std::to_string(r.grid.height) + "\n255\n";
  for (std::int32_t v : r.data) {
    if (v < 0) {
      detail::put_rgb(buf, 0, 0, 0);
    } else if (palette == Palette::grayscale) {
      const double t = static_cast<double>(v) / r.max_iter;
      const int ch = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      detail::put_rgb(buf, ch, ch, ch);
    } else {
      const auto& b = detail::kBands[v % 8];
      detail::put_rgb(buf, b[0], b[1], b[2]);
    }
  }
  detail::write_file(path, buf);
}

inline void write_ppm(const BinaryRaster& b, const std::string& path) {
  std::string buf;
  buf += "P6\n" + std::to_string(b.grid.width) + " " + std::to_string(b.grid.height) + "\n255\n";
  for (std::uint8_t m : b.mask) {
    const int ch = m ? 0 : 255;
    detail::put_rgb(buf, ch, ch, ch);
  }
  detail::write_file(path, buf);
}

inline void write_ppm(const FractionRaster& fr, const std::string& path) {
  std::string buf;
  buf += "P6\n" + std::to_string(fr.grid.width) + " " + std::to_string(fr.grid.height) + "\n255\n";
  for (double f : fr.data) {
    const int ch = static_cast<int>(std::lround(255.0 * (1.0 - f)));
    detail::put_rgb(buf, ch, ch, ch);
  }
  detail::write_file(path, buf);
}

// Locus rasters: 0 -> white, then the band table by count.
inline void write_ppm(const LocusRaster& l, const std::string& path) {
  std::string buf;
  buf += "P6\n" + std::to_string(l.grid.width) + " " + std::to_string(l.grid.height) + "\n255\n";
  for (std::int32_t v : l.data) {
    if (v <= 0)
      detail::put_rgb(buf, 255, 255, 255);
    else if (v == 1)
      detail::put_rgb(buf, 0, 0, 0);
    else {
      const auto& b = detail::kBands[v % 8];
      detail::put_rgb(buf, b[0], b[1], b[2]);
    }
  }
  detail::write_file(path, buf);
}

namespace detail {

inline nlohmann::json grid_json(const GridSpec& g) {
  return {{"re_min", g.re_min}, {"re_max", g.re_max}, {"im_min", g.im_min},
          {"im_max", g.im_max}, {"width", g.width},   {"height", g.height}};
}

inline GridSpec grid_from_json(const nlohmann::json& j) {
  GridSpec g;
  g.re_min = j.at("re_min").get<double>();
  g.re_max = j.at("re_max").get<double>();
  g.im_min = j.at("im_min").get<double>();
  g.im_max = j.at("im_max").get<double>();
  g.width = j.at("width").get<int>();
  g.height = j.at("height").get<int>();
  g.validate();
  return g;
}

template <typename T>
void write_raw(const std::string& path, const std::vector<T>& data) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(reinterpret_cast<const char*>(data.data()),
           static_cast<std::streamsize>(data.size() * sizeof(T)));
}

template <typename T>
std::vector<T> read_raw(const std::string& path, std::size_t count) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<T> data(count);
  is.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(T)));
  if (static_cast<std::size_t>(is.gcount()) != count * sizeof(T))
    throw std::runtime_error("short read: " + path);
  return data;
}

}  // namespace detail

// Raster persistence: raw native-endian grid at <base>.<ext> plus JSON
// metadata at <base>.meta.json. Round-trips are bit-exact.
inline void save_escape_raster(const EscapeRaster& r, const std::string& base) {
  detail::write_raw(base + ".i32", r.data);
  nlohmann::json meta = {{"kind", "escape_raster"},
                         {"dtype", "int32-native"},
                         {"grid", detail::grid_json(r.grid)},
                         {"max_iter", r.max_iter},
                         {"escape_radius", r.escape_radius}};
  detail::write_file(base + ".meta.json", meta.dump(2) + "\n");
}

inline EscapeRaster load_escape_raster(const std::string& base) {
  std::ifstream is(base + ".meta.json");
  if (!is) throw std::runtime_error("cannot open: " + base + ".meta.json");
  nlohmann::json meta = nlohmann::json::parse(is);
  EscapeRaster r;
  r.grid = detail::grid_from_json(meta.at("grid"));
  r.max_iter = meta.at("max_iter").get<int>();
  r.escape_radius = meta.at("escape_radius").get<double>();
  r.data = detail::read_raw<std::int32_t>(base + ".i32",
                                          static_cast<std::size_t>(r.grid.pixel_count()));
  return r;
}

inline void save_fraction_raster(const FractionRaster& fr, const std::string& base) {
  detail::write_raw(base + ".f64", fr.data);
  nlohmann::json meta = {{"kind", "fraction_raster"},
                         {"dtype", "float64-native"},
                         {"grid", detail::grid_json(fr.grid)},
                         {"config_count", fr.config_count}};
  detail::write_file(base + ".meta.json", meta.dump(2) + "\n");
}

inline FractionRaster load_fraction_raster(const std::string& base) {
  std::ifstream is(base + ".meta.json");
  if (!is) throw std::runtime_error("cannot open: " + base + ".meta.json");
  nlohmann::json meta = nlohmann::json::parse(is);
  FractionRaster fr;
  fr.grid = detail::grid_from_json(meta.at("grid"));
  fr.config_count = meta.at("config_count").get<int>();
  fr.data =
      detail::read_raw<double>(base + ".f64", static_cast<std::size_t>(fr.grid.pixel_count()));
  return fr;
}

// Network JSON:
//   {"n": 3, "adjacency": [[...], ...], "weights": [[...], ...],
//    "c": [re, im]}            -- equi-parameter shorthand, or
//    "c": [[re, im], ...]}     -- one pair per node
inline Network network_from_json(const nlohmann::json& j) {
  auto require = [&](const char* field) -> const nlohmann::json& {
    if (!j.contains(field)) throw ConfigError(field, "missing field");
    return j.at(field);
  };
  const nlohmann::json& jn = require("n");
  if (!jn.is_number_integer() || jn.get<int>() <= 0)
    throw ConfigError("n", "must be a positive integer");
  const int n = jn.get<int>();

  auto read_matrix = [&](const char* field, auto convert) {
    const nlohmann::json& jm = require(field);
    if (!jm.is_array() || static_cast<int>(jm.size()) != n)
      throw ConfigError(field, "expected " + std::to_string(n) + " rows");
    std::vector<decltype(convert(jm, field, 0, 0))> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
      const nlohmann::json& row = jm.at(r);
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ConfigError(std::string(field) + "/" + std::to_string(r),
                          "expected " + std::to_string(n) + " entries");
      for (int c = 0; c < n; ++c) out.push_back(convert(row, field, r, c));
    }
    return out;
  };

  std::vector<std::uint8_t> adj = read_matrix("adjacency", [](const nlohmann::json& row,
                                                              const char* field, int r, int c) {
    const nlohmann::json& v = row.at(c);
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1))
      throw ConfigError(std::string(field) + "/" + std::to_string(r) + "/" + std::to_string(c),
                        "adjacency entries must be 0 or 1");
    return static_cast<std::uint8_t>(v.get<int>());
  });
  std::vector<double> w = read_matrix("weights", [](const nlohmann::json& row, const char* field,
                                                    int r, int c) {
    const nlohmann::json& v = row.at(c);
    if (!v.is_number())
      throw ConfigError(std::string(field) + "/" + std::to_string(r) + "/" + std::to_string(c),
                        "weights must be real numbers");
    return v.get<double>();
  });

  const nlohmann::json& jc = require("c");
  std::vector<Complex> params;
  auto read_pair = [](const nlohmann::json& v, const std::string& path) -> Complex {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ConfigError(path, "expected [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
  };
  if (jc.is_array() && jc.size() == 2 && jc[0].is_number()) {
    params.assign(static_cast<std::size_t>(n), read_pair(jc, "c"));  // equi shorthand
  } else if (jc.is_array() && static_cast<int>(jc.size()) == n) {
    for (int i = 0; i < n; ++i) params.push_back(read_pair(jc.at(i), "c/" + std::to_string(i)));
  } else {
    throw ConfigError("c", "expected [re, im] or one [re, im] per node");
  }
  return Network(n, std::move(adj), std::move(w), std::move(params));
}

inline Network read_network_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path, "cannot open network file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
  return network_from_json(j);
}

inline nlohmann::json network_to_json(const Network& net) {
  nlohmann::json adj = nlohmann::json::array(), w = nlohmann::json::array(),
                 c = nlohmann::json::array();
  for (int j = 0; j < net.n; ++j) {
    nlohmann::json ra = nlohmann::json::array(), rw = nlohmann::json::array();
    for (int k = 0; k < net.n; ++k) {
      ra.push_back(static_cast<int>(net.adjacency[static_cast<std::size_t>(j) * net.n + k]));
      rw.push_back(net.weights[static_cast<std::size_t>(j) * net.n + k]);
    }
    adj.push_back(ra);
    w.push_back(rw);
    c.push_back({net.params[j].real(), net.params[j].imag()});
  }
  return {{"n", net.n}, {"adjacency", adj}, {"weights", w}, {"c", c}};
}

// Complex flags in a+bi / a-bi form: "-1.15+0.26i", "0.5", "-i", "1i".
inline Complex parse_complex(const std::string& text) {
  const std::string s = [&] {
    std::string t;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    return t;
  }();
  if (s.empty()) throw ConfigError("complex", "empty value");
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_real = [&](const std::string& part, bool imag_unit_ok) -> double {
    std::string body = part;
    if (imag_unit_ok) {
      if (body.empty() || body.back() != 'i')
        throw ConfigError("complex", "imaginary part must end in i: " + text);
      body.pop_back();
      if (body.empty() || body == "+") return 1.0;
      if (body == "-") return -1.0;
    }
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(body, &used);
    } catch (const std::exception&) {
      throw ConfigError("complex", "cannot parse: " + text);
    }
    if (used != body.size()) throw ConfigError("complex", "cannot parse: " + text);
    return v;
  };
  if (s.back() == 'i') {
    if (split == std::string::npos) return {0.0, parse_real(s, true)};
    return {parse_real(s.substr(0, split), false), parse_real(s.substr(split), true)};
  }
  if (split != std::string::npos && s.find('i') != std::string::npos)
    throw ConfigError("complex", "cannot parse: " + text);
  return {parse_real(s, false), 0.0};
}

inline std::string format_complex(Complex c) {
  std::ostringstream oss;
  oss.precision(17);
  oss << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return oss.str();
}

// Row-major adjacency bitmask as hex, first cell = most significant bit.
inline std::string adjacency_hex(const Network& net) {
  const int bits = net.n * net.n;
  const int digits = (bits + 3) / 4;
  std::string out(digits, '0');
  for (int i = 0; i < bits; ++i) {
    if (!net.adjacency[i]) continue;
    const int bit_from_end = bits - 1 - i;  // value of cell i
    const int digit = digits - 1 - bit_from_end / 4;
    const int val = 1 << (bit_from_end % 4);
    const int cur = std::isdigit(out[digit]) ? out[digit] - '0' : out[digit] - 'a' + 10;
    const int nv = cur | val;
    out[digit] = nv < 10 ? static_cast<char>('0' + nv) : static_cast<char>('a' + nv - 10);
  }
  return out;
}

}  // namespace quadnet
