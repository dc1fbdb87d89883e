#include "lovespec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lovespec::io {

namespace {

using nlohmann::json;

json parse_json(const fs::path& p) {
  try {
    return json::parse(read_text(p));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, p.string() + ": " + e.what());
  }
}

const json& field(const json& j, const char* name, const fs::path& file) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(ErrorKind::parse, "missing field '" + std::string(name) + "' in " + file.string());
  }
  return j.at(name);
}

double number(const json& j, const char* name, const fs::path& file) {
  const json& v = field(j, name, file);
  if (!v.is_number()) {
    throw Error(ErrorKind::parse, "field '" + std::string(name) + "' in " + file.string() +
                                      " is not a number");
  }
  return v.get<double>();
}

cplx complex_pair(const json& v, const fs::path& file) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(ErrorKind::parse, "expected [re, im] in " + file.string());
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

// Rows of a numeric CSV with the given header.
std::vector<std::vector<double>> read_csv(const fs::path& p, const std::string& header) {
  std::istringstream in(read_text(p));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::parse, p.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw Error(ErrorKind::parse, p.string() + ": expected header '" + header + "'");
  }
  const auto columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',') + 1);
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    const char* b = line.data();
    const char* e = b + line.size();
    while (true) {
      double v = 0.0;
      const auto r = std::from_chars(b, e, v);
      if (r.ec != std::errc()) {
        throw Error(ErrorKind::parse, p.string() + ":" + std::to_string(lineno) + ": bad number");
      }
      row.push_back(v);
      if (r.ptr == e) break;
      if (*r.ptr != ',') {
        throw Error(ErrorKind::parse, p.string() + ":" + std::to_string(lineno) + ": bad separator");
      }
      b = r.ptr + 1;
    }
    if (row.size() != columns) {
      throw Error(ErrorKind::parse, p.string() + ":" + std::to_string(lineno) + ": expected " +
                                        std::to_string(columns) + " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

fs::path sidecar_path(const fs::path& csv) {
  fs::path p = csv;
  return p.replace_extension(".json");
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + p.string());
  out << text;
  if (!out) throw Error(ErrorKind::io, "failed writing " + p.string());
}

ShearProfile read_profile(const fs::path& csv) {
  const auto side = sidecar_path(csv);
  const json meta = parse_json(side);
  ShearProfile p;
  p.mu_hat_tail = number(meta, "mu_hat_tail", side);
  p.x_support = number(meta, "x_support", side);
  for (const auto& r : read_csv(csv, "x,mu_hat")) {
    p.grid_x.push_back(r[0]);
    p.mu_hat.push_back(r[1]);
  }
  p.validate();
  return p;
}

void write_profile(const fs::path& csv, const ShearProfile& p) {
  std::string s = "x,mu_hat\n";
  for (std::size_t i = 0; i < p.grid_x.size(); ++i) {
    s += format_double(p.grid_x[i]) + "," + format_double(p.mu_hat[i]) + "\n";
  }
  write_text(csv, s);
  write_text(sidecar_path(csv), dump({{"mu_hat_tail", p.mu_hat_tail}, {"x_support", p.x_support}}));
}

RobinProblem read_potential(const fs::path& csv) {
  const auto side = sidecar_path(csv);
  const json meta = parse_json(side);
  RobinProblem p;
  p.h = number(meta, "h", side);
  p.potential.x_support = number(meta, "x_support", side);
  for (const auto& r : read_csv(csv, "x,v,v_prime")) {
    p.potential.grid_x.push_back(r[0]);
    p.potential.v.push_back(r[1]);
    p.potential.v_prime.push_back(r[2]);
  }
  p.validate();
  return p;
}

void write_potential(const fs::path& csv, const RobinProblem& p) {
  const auto& g = p.potential;
  std::string s = "x,v,v_prime\n";
  for (std::size_t i = 0; i < g.grid_x.size(); ++i) {
    s += format_double(g.grid_x[i]) + "," + format_double(g.v[i]) + "," +
         format_double(g.v_prime[i]) + "\n";
  }
  write_text(csv, s);
  write_text(sidecar_path(csv), dump({{"h", p.h}, {"x_support", g.x_support}}));
}

SpectrumData read_spectrum(const fs::path& path) {
  const json j = parse_json(path);
  SpectrumData s;
  for (const auto& v : field(j, "eigen_k", path)) s.eigen_k.push_back(complex_pair(v, path));
  for (const auto& v : field(j, "resonance_k", path)) s.resonance_k.push_back(complex_pair(v, path));
  for (const auto& v : field(j, "alphas", path)) {
    if (!v.is_number()) throw Error(ErrorKind::parse, "non-numeric alpha in " + path.string());
    s.alphas.push_back(v.get<double>());
  }
  for (const auto& v : field(j, "jump_samples", path)) {
    const cplx p = complex_pair(v, path);
    s.jump_samples.emplace_back(p.real(), p.imag());
  }
  s.truncation_radius = number(j, "truncation_radius", path);
  s.validate();
  return s;
}

void write_spectrum(const fs::path& path, const SpectrumData& s) {
  json j;
  auto pairs = [](const std::vector<cplx>& v) {
    json a = json::array();
    for (const cplx z : v) a.push_back({z.real(), z.imag()});
    return a;
  };
  j["eigen_k"] = pairs(s.eigen_k);
  j["resonance_k"] = pairs(s.resonance_k);
  j["alphas"] = s.alphas;
  json samples = json::array();
  for (const auto& [lambda, t] : s.jump_samples) samples.push_back({lambda, t});
  j["jump_samples"] = std::move(samples);
  j["truncation_radius"] = s.truncation_radius;
  write_text(path, dump(j));
}

void write_kernel(const fs::path& csv, const Kernel2D& k) {
  std::string s = "x,y,value\n";
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      s += format_double(k.grid_x[i]) + "," + format_double(k.grid_x[j]) + "," +
           format_double(k(i, j)) + "\n";
    }
  }
  write_text(csv, s);
}

}  // namespace lovespec::io
