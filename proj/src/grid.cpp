#include "vexspace/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "vexspace/errors.hpp"
#include "vexspace/fft.hpp"

namespace vexspace {

Grid::Grid(int dim, double boxRadius, std::size_t pointsPerAxis)
    : dim_(dim), radius_(boxRadius), n_(pointsPerAxis), h_(2 * boxRadius / static_cast<double>(pointsPerAxis)) {
  if (dim != 1 && dim != 2) throw DomainError("grid dimension must be 1 or 2");
  if (!(boxRadius > 0) || !std::isfinite(boxRadius)) throw DomainError("box radius must be positive");
  if (pointsPerAxis < 8 || (pointsPerAxis & (pointsPerAxis - 1)) != 0)
    throw DomainError("points per axis must be a power of two >= 8");
}

Point Grid::node(std::size_t flat) const {
  if (dim_ == 1) return {coord(flat), 0.0};
  return {coord(flat % n_), coord(flat / n_)};
}

bool Grid::contains(const Point& x) const {
  for (int d = 0; d < dim_; ++d)
    if (!(std::abs(x[d]) <= radius_)) return false;
  return true;
}

std::size_t Grid::nearestNode(const Point& x) const {
  auto axis = [&](double v) {
    long i = std::lround((v + radius_) / h_);
    long n = static_cast<long>(n_);
    return static_cast<std::size_t>(((i % n) + n) % n);
  };
  if (dim_ == 1) return axis(x[0]);
  return flatIndex(axis(x[0]), axis(x[1]));
}

long Grid::signedFrequencyIndex(std::size_t k) const {
  long kk = static_cast<long>(k);
  long n = static_cast<long>(n_);
  return kk < n / 2 ? kk : kk - n;
}

double Grid::frequency(std::size_t k) const {
  return M_PI * static_cast<double>(signedFrequencyIndex(k)) / radius_;
}

Point Grid::frequencyPoint(std::size_t flat) const {
  if (dim_ == 1) return {frequency(flat), 0.0};
  return {frequency(flat % n_), frequency(flat / n_)};
}

double Grid::nyquist() const { return M_PI * static_cast<double>(n_) / (2 * radius_); }

void requireSameGrid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw DomainError("grid mismatch");
}

GridFunction::GridFunction(const Grid& grid) : grid_(grid), values_(grid.size()) {}

GridFunction::GridFunction(const Grid& grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw DomainError("value count does not match grid");
  for (const Complex& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("grid function values must be finite");
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<Complex(const Point&)>& fn) {
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.node(i));
  return GridFunction(grid, std::move(values));
}

GridFunction GridFunction::sampleReal(const Grid& grid, const std::function<double(const Point&)>& fn) {
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.node(i));
  return GridFunction(grid, std::move(values));
}

GridFunction GridFunction::scaled(Complex factor) const {
  std::vector<Complex> out(values_);
  for (Complex& v : out) v *= factor;
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
  requireSameGrid(grid_, other.grid_);
  std::vector<Complex> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.values_[i];
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  requireSameGrid(grid_, other.grid_);
  std::vector<Complex> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.values_[i];
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::pointwiseProduct(const GridFunction& other) const {
  requireSameGrid(grid_, other.grid_);
  std::vector<Complex> out(values_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= other.values_[i];
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::absPower(double t) const {
  if (!(t > 0)) throw DomainError("power must be positive");
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(std::abs(values_[i]), t);
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::absolute() const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(values_[i]);
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::map(const std::function<Complex(const Point&, Complex)>& fn) const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(grid_.node(i), values_[i]);
  return GridFunction(grid_, std::move(out));
}

double GridFunction::maxAbs() const {
  double m = 0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::isZero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& v) { return v == Complex(0, 0); });
}

GridFunctionSequence::GridFunctionSequence(const Grid& grid, std::vector<GridFunction> entries)
    : grid_(grid), entries_(std::move(entries)) {
  for (const GridFunction& f : entries_) requireSameGrid(grid_, f.grid());
}

void GridFunctionSequence::push(GridFunction f) {
  requireSameGrid(grid_, f.grid());
  entries_.push_back(std::move(f));
}

GridFunctionSequence GridFunctionSequence::scaled(Complex factor) const {
  GridFunctionSequence out(grid_);
  for (const GridFunction& f : entries_) out.push(f.scaled(factor));
  return out;
}

GridFunctionSequence GridFunctionSequence::operator+(const GridFunctionSequence& other) const {
  requireSameGrid(grid_, other.grid_);
  if (size() != other.size()) throw DomainError("sequence length mismatch");
  GridFunctionSequence out(grid_);
  for (std::size_t i = 0; i < size(); ++i) out.push(entries_[i] + other.entries_[i]);
  return out;
}

GridFunctionSequence GridFunctionSequence::absPower(double t) const {
  GridFunctionSequence out(grid_);
  for (const GridFunction& f : entries_) out.push(f.absPower(t));
  return out;
}

bool GridFunctionSequence::isZero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const GridFunction& f) { return f.isZero(); });
}

Complex integrate(const GridFunction& g) {
  Complex sum = 0;
  for (const Complex& v : g.values()) sum += v;
  return sum * g.grid().cellVolume();
}

double integrateAbs(const GridFunction& g) {
  double sum = 0;
  for (const Complex& v : g.values()) sum += std::abs(v);
  return sum * g.grid().cellVolume();
}

GridFunction ballIndicator(const Grid& grid, const Point& center, double radius) {
  if (!(radius > 0)) throw DomainError("ball radius must be positive");
  if (!grid.contains(center)) throw DomainError("ball center outside the box");
  return GridFunction::sampleReal(grid, [&](const Point& x) {
    return distance(x, center, grid.dim()) < radius ? 1.0 : 0.0;
  });
}

GridFunction boxIndicator(const Grid& grid, const Point& lo, const Point& hi) {
  return GridFunction::sampleReal(grid, [&](const Point& x) {
    for (int d = 0; d < grid.dim(); ++d)
      if (!(x[d] >= lo[d] && x[d] < hi[d])) return 0.0;
    return 1.0;
  });
}

namespace {

std::vector<Complex> forward(const GridFunction& f) {
  std::vector<Complex> data(f.values());
  fft::transform(data, f.grid().dim(), f.grid().pointsPerAxis(), -1);
  return data;
}

GridFunction backward(const Grid& grid, std::vector<Complex> spectrum) {
  fft::transform(spectrum, grid.dim(), grid.pointsPerAxis(), +1);
  double scale = 1.0 / static_cast<double>(grid.size());
  for (Complex& v : spectrum) v *= scale;
  return GridFunction(grid, std::move(spectrum));
}

}  // namespace

GridFunction convolve(const GridFunction& f, const GridFunction& k) {
  requireSameGrid(f.grid(), k.grid());
  const Grid& grid = f.grid();
  std::vector<Complex> a = forward(f);
  std::vector<Complex> b = forward(k);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  GridFunction circ = backward(grid, std::move(a));
  // The kernel's origin sits at node N/2; undo that offset.
  std::size_t n = grid.pointsPerAxis(), half = n / 2;
  double cell = grid.cellVolume();
  std::vector<Complex> out(grid.size());
  if (grid.dim() == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = circ[(i + half) % n] * cell;
  } else {
    for (std::size_t iy = 0; iy < n; ++iy)
      for (std::size_t ix = 0; ix < n; ++ix)
        out[iy * n + ix] = circ[((iy + half) % n) * n + (ix + half) % n] * cell;
  }
  return GridFunction(grid, std::move(out));
}

GridFunction fourierMultiplier(const GridFunction& f, const std::function<double(const Point&)>& window) {
  return fourierMultipliers(f, {window}).front();
}

std::vector<GridFunction> fourierMultipliers(const GridFunction& f,
                                             const std::vector<std::function<double(const Point&)>>& windows) {
  const Grid& grid = f.grid();
  std::vector<Complex> spectrum = forward(f);
  std::vector<GridFunction> out;
  out.reserve(windows.size());
  for (const auto& window : windows) {
    std::vector<Complex> filtered(spectrum.size());
    bool any = false;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      double w = window(grid.frequencyPoint(k));
      if (w != 0) {
        filtered[k] = spectrum[k] * w;
        any = true;
      }
    }
    out.push_back(any ? backward(grid, std::move(filtered)) : GridFunction(grid));
  }
  return out;
}

double frequencyEnergy(const GridFunction& f) {
  std::vector<Complex> spectrum = forward(f);
  double sum = 0;
  for (const Complex& v : spectrum) sum += std::norm(v);
  double n = static_cast<double>(f.grid().size());
  return sum * f.grid().cellVolume() / n;
}

void writeGridFunctionCsv(std::ostream& out, const GridFunction& f) {
  const Grid& g = f.grid();
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d,%.17g,%zu\n", g.dim(), g.boxRadius(), g.pointsPerAxis());
  out << buf;
  for (const Complex& v : f.values()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
    out << buf;
  }
}

namespace {

double parseDouble(const std::string& token, std::size_t line) {
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size())
    throw ParseError("line " + std::to_string(line) + ": bad number '" + token + "'");
  return v;
}

std::vector<std::string> splitComma(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

GridFunction readGridFunctionCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto head = splitComma(line);
  if (head.size() != 3) throw ParseError("line 1: header must be dim,R,N");
  int dim = static_cast<int>(parseDouble(head[0], 1));
  double radius = parseDouble(head[1], 1);
  auto n = static_cast<std::size_t>(parseDouble(head[2], 1));
  Grid grid(dim, radius, n);
  std::vector<Complex> values;
  values.reserve(grid.size());
  std::size_t lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto parts = splitComma(line);
    if (parts.size() != 2) throw ParseError("line " + std::to_string(lineNo) + ": expected re,im");
    values.emplace_back(parseDouble(parts[0], lineNo), parseDouble(parts[1], lineNo));
  }
  if (values.size() != grid.size())
    throw ParseError("expected " + std::to_string(grid.size()) + " values, found " + std::to_string(values.size()));
  return GridFunction(grid, std::move(values));
}

void writeGridFunctionCsv(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  writeGridFunctionCsv(out, f);
  if (!out) throw IoError("write failed for " + path);
}

GridFunction readGridFunctionCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return readGridFunctionCsv(in);
}

GridFunctionSequence readSequenceManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw ParseError(path + ": field 'entries' must be an array of CSV paths");
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<GridFunction> entries;
  for (const auto& item : doc["entries"]) {
    if (!item.is_string()) throw ParseError(path + ": field 'entries' must hold strings");
    std::filesystem::path p = item.get<std::string>();
    if (p.is_relative()) p = base / p;
    entries.push_back(readGridFunctionCsv(p.string()));
  }
  if (entries.empty()) throw ParseError(path + ": manifest lists no entries");
  Grid grid = entries.front().grid();
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    Grid declared(g.value("dim", 1), g.value("R", 8.0), g.value("N", std::size_t{512}));
    requireSameGrid(declared, grid);
  }
  return GridFunctionSequence(grid, std::move(entries));
}

void writeSequenceManifest(const std::string& path, const GridFunctionSequence& seq) {
  std::filesystem::path manifest(path);
  std::filesystem::path base = manifest.parent_path();
  std::string stem = manifest.stem().string();
  nlohmann::json doc;
  doc["grid"] = {{"dim", seq.grid().dim()}, {"R", seq.grid().boxRadius()}, {"N", seq.grid().pointsPerAxis()}};
  doc["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::string name = stem + "_" + std::to_string(i) + ".csv";
    writeGridFunctionCsv((base / name).string(), seq[i]);
    doc["entries"].push_back(name);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace vexspace
