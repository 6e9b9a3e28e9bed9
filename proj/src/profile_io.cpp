#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "blockrad/errors.hpp"
#include "blockrad/profile.hpp"

namespace blockrad {
namespace {

constexpr char kTextMagic[] = "blockrad-profile";
constexpr char kBinMagic[4] = {'B', 'R', 'P', 'F'};
constexpr std::uint32_t kVersion = 1;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void expect(std::istream& in, const std::string& word) {
  std::string w;
  if (!(in >> w) || w != word) throw DomainError("profile text: expected '" + word + "', got '" + w + "'");
}

template <class T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw DomainError("profile binary: truncated input");
  return v;
}

}  // namespace

void save_text(const BlockRadialProfile& f, std::ostream& out) {
  out << kTextMagic << ' ' << kVersion << '\n';
  out << "d " << f.dims().d << " k " << f.dims().k << '\n';
  out << "grid1 " << f.n1() << ' ' << f.grid1().panel_order << '\n';
  out << "grid2 " << f.n2() << ' ' << f.grid2().panel_order << '\n';
  for (std::size_t i = 0; i < f.n1(); ++i)
    for (std::size_t j = 0; j < f.n2(); ++j) {
      const cplx v = f.at(i, j);
      out << fmt17(f.grid1().x[i]) << ' ' << fmt17(f.grid2().x[j]) << ' ' << fmt17(v.real()) << ' '
          << fmt17(v.imag()) << '\n';
    }
}

BlockRadialProfile load_text(std::istream& in) {
  expect(in, kTextMagic);
  std::uint32_t version = 0;
  if (!(in >> version) || version != kVersion) throw DomainError("profile text: unsupported version");
  Dimensions dims;
  std::size_t n1 = 0, n2 = 0;
  int o1 = 0, o2 = 0;
  expect(in, "d");
  in >> dims.d;
  expect(in, "k");
  in >> dims.k;
  expect(in, "grid1");
  in >> n1 >> o1;
  expect(in, "grid2");
  in >> n2 >> o2;
  if (!in || n1 < 2 || n2 < 2) throw DomainError("profile text: malformed header");
  std::vector<double> x1(n1), x2(n2);
  std::vector<cplx> vals(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      double a, b, re, im;
      if (!(in >> a >> b >> re >> im)) throw DomainError("profile text: truncated data");
      if (j == 0) x1[i] = a;
      if (i == 0) x2[j] = b;
      vals[i * n2 + j] = {re, im};
    }
  BlockRadialProfile f(dims, make_grid_from_nodes(std::move(x1), o1), make_grid_from_nodes(std::move(x2), o2));
  f.values() = std::move(vals);
  return f;
}

void save_binary(const BlockRadialProfile& f, std::ostream& out) {
  out.write(kBinMagic, 4);
  put(out, kVersion);
  put(out, std::int32_t(f.dims().d));
  put(out, std::int32_t(f.dims().k));
  put(out, std::int32_t(f.grid1().panel_order));
  put(out, std::int32_t(f.grid2().panel_order));
  put(out, std::uint64_t(f.n1()));
  put(out, std::uint64_t(f.n2()));
  for (double x : f.grid1().x) put(out, x);
  for (double x : f.grid2().x) put(out, x);
  for (const cplx& v : f.values()) {
    put(out, v.real());
    put(out, v.imag());
  }
}

BlockRadialProfile load_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != std::string(kBinMagic, 4))
    throw DomainError("profile binary: bad magic");
  if (get<std::uint32_t>(in) != kVersion) throw DomainError("profile binary: unsupported version");
  Dimensions dims;
  dims.d = get<std::int32_t>(in);
  dims.k = get<std::int32_t>(in);
  const int o1 = get<std::int32_t>(in), o2 = get<std::int32_t>(in);
  const std::uint64_t n1 = get<std::uint64_t>(in), n2 = get<std::uint64_t>(in);
  if (n1 < 2 || n2 < 2 || n1 > (1u << 26) || n2 > (1u << 26)) throw DomainError("profile binary: bad sizes");
  std::vector<double> x1(n1), x2(n2);
  for (auto& x : x1) x = get<double>(in);
  for (auto& x : x2) x = get<double>(in);
  BlockRadialProfile f(dims, make_grid_from_nodes(std::move(x1), o1), make_grid_from_nodes(std::move(x2), o2));
  for (auto& v : f.values()) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    v = {re, im};
  }
  return f;
}

void save_profile(const BlockRadialProfile& f, const std::string& path) {
  const bool bin = path.size() >= 4 && path.substr(path.size() - 4) == ".bin";
  std::ofstream out(path, bin ? std::ios::binary : std::ios::out);
  if (!out) throw DomainError("cannot open '" + path + "' for writing");
  if (bin)
    save_binary(f, out);
  else
    save_text(f, out);
}

BlockRadialProfile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  char c = 0;
  in.get(c);
  in.unget();
  if (c == kBinMagic[0]) return load_binary(in);
  return load_text(in);
}

}  // namespace blockrad
