#include "frontprop/fpf.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace frontprop {

static_assert(std::endian::native == std::endian::little,
              "FPF1 binary payload assumes a little-endian host");

namespace {

std::string sibling_bin(const std::string& header_path) {
  std::filesystem::path p(header_path);
  p.replace_extension(".bin");
  return p.string();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_fpf(const std::string& header_path, const ScalarField& field,
               const FpfMeta& meta) {
  const Grid& g = field.grid;
  const std::string bin_path = sibling_bin(header_path);
  {
    std::ofstream h(header_path);
    require(h.good(), Err::IoError, "cannot open " + header_path);
    h << "FPF1\n";
    h << "dim " << g.dim << "\n";
    h << "extents " << g.n[0];
    if (g.dim == 2) h << " " << g.n[1];
    h << "\n";
    h << "origin " << fmt(g.origin[0]);
    if (g.dim == 2) h << " " << fmt(g.origin[1]);
    h << "\n";
    h << "spacing " << fmt(g.h) << "\n";
    h << "time " << fmt(field.time) << "\n";
    h << "value_count " << field.v.size() << "\n";
    if (meta.sentinel) h << "sentinel " << fmt(*meta.sentinel) << "\n";
    h << "data " << std::filesystem::path(bin_path).filename().string() << "\n";
    require(h.good(), Err::IoError, "write failed: " + header_path);
  }
  std::ofstream b(bin_path, std::ios::binary);
  require(b.good(), Err::IoError, "cannot open " + bin_path);
  b.write(reinterpret_cast<const char*>(field.v.data()),
          static_cast<std::streamsize>(field.v.size() * sizeof(double)));
  require(b.good(), Err::IoError, "write failed: " + bin_path);
}

ScalarField read_fpf(const std::string& header_path, FpfMeta* meta) {
  std::ifstream h(header_path);
  require(h.good(), Err::IoError, "cannot open " + header_path);
  std::string magic;
  std::getline(h, magic);
  require(magic == "FPF1", Err::IoError, header_path + ": not an FPF1 header");

  Grid g;
  std::size_t count = 0;
  double time = 0.0;
  std::string data_name;
  FpfMeta m;
  std::string line;
  while (std::getline(h, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dim") ls >> g.dim;
    else if (key == "extents") {
      ls >> g.n[0];
      if (!(ls >> g.n[1])) g.n[1] = 1;
    } else if (key == "origin") {
      ls >> g.origin[0];
      if (!(ls >> g.origin[1])) g.origin[1] = 0.0;
    } else if (key == "spacing") ls >> g.h;
    else if (key == "time") ls >> time;
    else if (key == "value_count") ls >> count;
    else if (key == "sentinel") {
      double s;
      ls >> s;
      m.sentinel = s;
    } else if (key == "data") ls >> data_name;
  }
  if (g.dim == 1) g.n[1] = 1;
  g.validate();
  require(count == g.size(), Err::IoError, header_path + ": value_count mismatch");

  std::string bin_path =
      (std::filesystem::path(header_path).parent_path() / data_name).string();
  if (data_name.empty()) bin_path = sibling_bin(header_path);
  std::ifstream b(bin_path, std::ios::binary);
  require(b.good(), Err::IoError, "cannot open " + bin_path);
  ScalarField out(g, 0.0, time);
  b.read(reinterpret_cast<char*>(out.v.data()),
         static_cast<std::streamsize>(count * sizeof(double)));
  require(static_cast<std::size_t>(b.gcount()) == count * sizeof(double), Err::IoError,
          bin_path + ": short read");
  if (meta) *meta = m;
  return out;
}

std::string fpf_info(const std::string& header_path) {
  FpfMeta meta;
  ScalarField f = read_fpf(header_path, &meta);
  std::ostringstream out;
  out << "dim " << f.grid.dim << "\n";
  out << "extents " << f.grid.n[0];
  if (f.grid.dim == 2) out << " " << f.grid.n[1];
  out << "\n";
  out << "origin " << fmt(f.grid.origin[0]);
  if (f.grid.dim == 2) out << " " << fmt(f.grid.origin[1]);
  out << "\n";
  out << "spacing " << fmt(f.grid.h) << "\n";
  out << "time " << fmt(f.time) << "\n";
  out << "value_count " << f.v.size() << "\n";
  if (meta.sentinel) {
    std::size_t hits = 0;
    for (double x : f.v)
      if (x == *meta.sentinel) ++hits;
    out << "sentinel " << fmt(*meta.sentinel) << " (" << hits << " cells)\n";
  }
  double mean = 0.0;
  for (double x : f.v) mean += x;
  mean /= static_cast<double>(f.v.size());
  out << "min " << fmt(f.min()) << "\n";
  out << "max " << fmt(f.max()) << "\n";
  out << "mean " << fmt(mean) << "\n";
  return out.str();
}

}  // namespace frontprop
