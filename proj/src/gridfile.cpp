#include "ssb/gridfile.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace ssb {

namespace {

constexpr char kMagic[8] = {'S', 'S', 'B', 'G', 'R', 'I', 'D', '1'};

static_assert(std::endian::native == std::endian::little, "grid files assume a little-endian host");

class Writer {
 public:
  void u32(std::uint32_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void raw(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}
  std::uint32_t u32() {
    std::uint32_t v;
    raw(&v, sizeof v);
    return v;
  }
  double f64() {
    double v;
    raw(&v, sizeof v);
    return v;
  }
  void raw(void* p, std::size_t n) {
    if (pos_ + n > bytes_.size()) {
      throw Error(fmt::format("grid file truncated at byte {} (size {})", pos_, bytes_.size()));
    }
    std::memcpy(p, bytes_.data() + pos_, n);
    pos_ += n;
  }
  bool done() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GridFile make_grid_file(const MultipletField& field, Eigen::Index r) {
  GridFile f{field.grid, field.n, r, GridFieldKind::multiplet, field.values, {}, {}};
  return f;
}

GridFile make_grid_file(const GaugeTransformField& field, Eigen::Index r) {
  const Eigen::Index n = field.values.empty() ? 0 : field.values.front().rows();
  return GridFile{field.grid, n, r, GridFieldKind::unitary, {}, field.values, {}};
}

GridFile make_grid_file(const GaugeField& field, Eigen::Index n) {
  return GridFile{field.grid, n, field.r, GridFieldKind::gauge, {}, {}, field.coeffs};
}

std::string encode_grid_file(const GridFile& file) {
  const Grid& g = file.grid;
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.u32(static_cast<std::uint32_t>(g.dim()));
  for (int e : g.shape()) w.u32(static_cast<std::uint32_t>(e));
  w.f64(g.spacing());
  w.u32(static_cast<std::uint32_t>(file.n));
  w.u32(static_cast<std::uint32_t>(file.r));
  w.u32(g.metric() == Metric::euclidean ? 0U : 1U);
  w.u32(static_cast<std::uint32_t>(file.kind));
  auto pair = [&](Complex z) {
    w.f64(z.real());
    w.f64(z.imag());
  };
  switch (file.kind) {
    case GridFieldKind::multiplet:
      if (file.multiplet.size() != g.sites()) throw StructuralError("grid file: multiplet payload size mismatch");
      for (const auto& v : file.multiplet) {
        if (v.size() != file.n) throw StructuralError("grid file: multiplet value has the wrong size");
        for (Eigen::Index i = 0; i < v.size(); ++i) pair(v[i]);
      }
      break;
    case GridFieldKind::unitary:
      if (file.unitary.size() != g.sites()) throw StructuralError("grid file: matrix payload size mismatch");
      for (const auto& m : file.unitary) {
        if (m.rows() != file.n || m.cols() != file.n) throw StructuralError("grid file: matrix has the wrong size");
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          for (Eigen::Index j = 0; j < m.cols(); ++j) pair(m(i, j));
        }
      }
      break;
    case GridFieldKind::gauge:
      if (file.gauge.size() != g.sites() * static_cast<std::size_t>(g.dim())) {
        throw StructuralError("grid file: gauge payload size mismatch");
      }
      for (const auto& c : file.gauge) {
        if (c.size() != file.r) throw StructuralError("grid file: gauge value has the wrong size");
        for (Eigen::Index i = 0; i < c.size(); ++i) w.f64(c[i]);
      }
      break;
  }
  return w.take();
}

GridFile decode_grid_file(const std::string& bytes) {
  Reader rd(bytes);
  char magic[8];
  rd.raw(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) throw Error("grid file: bad magic");
  const std::uint32_t dim = rd.u32();
  if (dim == 0 || dim > 16) throw Error(fmt::format("grid file: unsupported dimension {}", dim));
  std::vector<int> shape(dim);
  for (auto& e : shape) {
    e = static_cast<int>(rd.u32());
    if (e < 4 || e > (1 << 20)) throw Error(fmt::format("grid file: unsupported extent {}", e));
  }
  const double h = rd.f64();
  const auto n = static_cast<Eigen::Index>(rd.u32());
  const auto r = static_cast<Eigen::Index>(rd.u32());
  const std::uint32_t metric = rd.u32();
  const std::uint32_t kind = rd.u32();
  if (metric > 1) throw Error(fmt::format("grid file: unknown metric {}", metric));
  if (kind > 2) throw Error(fmt::format("grid file: unknown field kind {}", kind));
  GridFile f{Grid(shape, h, metric == 0 ? Metric::euclidean : Metric::lorentzian), n, r,
             static_cast<GridFieldKind>(kind), {}, {}, {}};
  auto pair = [&] {
    const double re = rd.f64();
    const double im = rd.f64();
    return Complex(re, im);
  };
  const std::size_t sites = f.grid.sites();
  const std::size_t per_site = kind == 0   ? 16 * static_cast<std::size_t>(n)
                               : kind == 1 ? 16 * static_cast<std::size_t>(n * n)
                                           : 8 * static_cast<std::size_t>(r) * dim;
  if (sites * per_site != rd.remaining()) {
    throw Error(fmt::format("grid file: payload has {} bytes, header implies {}", rd.remaining(),
                            sites * per_site));
  }
  switch (f.kind) {
    case GridFieldKind::multiplet:
      f.multiplet.resize(sites, CVector(n));
      for (auto& v : f.multiplet) {
        for (Eigen::Index i = 0; i < n; ++i) v[i] = pair();
      }
      break;
    case GridFieldKind::unitary:
      f.unitary.resize(sites, CMatrix(n, n));
      for (auto& m : f.unitary) {
        for (Eigen::Index i = 0; i < n; ++i) {
          for (Eigen::Index j = 0; j < n; ++j) m(i, j) = pair();
        }
      }
      break;
    case GridFieldKind::gauge:
      f.gauge.resize(sites * dim, RVector(r));
      for (auto& c : f.gauge) {
        for (Eigen::Index i = 0; i < r; ++i) c[i] = rd.f64();
      }
      break;
  }
  if (!rd.done()) throw Error("grid file: trailing bytes after payload");
  return f;
}

void write_grid_file(const std::string& path, const GridFile& file) {
  const std::string bytes = encode_grid_file(file);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write grid file '{}'", path));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(fmt::format("failed writing grid file '{}'", path));
}

GridFile read_grid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open grid file '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return decode_grid_file(buffer.str());
  } catch (const Error& e) {
    throw Error(fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace ssb
