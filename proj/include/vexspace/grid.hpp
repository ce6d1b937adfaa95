#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vexspace/point.hpp"

namespace vexspace {

using Complex = std::complex<double>;

// Uniform periodic grid on [-R,R]^n with nodes x_i = -R + i h, h = 2R/N.
class Grid {
 public:
  Grid(int dim, double boxRadius, std::size_t pointsPerAxis);

  int dim() const { return dim_; }
  double boxRadius() const { return radius_; }
  std::size_t pointsPerAxis() const { return n_; }
  double spacing() const { return h_; }
  double cellVolume() const { return dim_ == 1 ? h_ : h_ * h_; }
  std::size_t size() const { return dim_ == 1 ? n_ : n_ * n_; }

  double coord(std::size_t i) const { return -radius_ + static_cast<double>(i) * h_; }
  Point node(std::size_t flat) const;
  std::size_t flatIndex(std::size_t ix, std::size_t iy) const { return iy * n_ + ix; }
  bool contains(const Point& x) const;
  // Nearest node with periodic wrap (x = R maps to the node at -R).
  std::size_t nearestNode(const Point& x) const;
  // Signed integer frequency index of DFT bin k and the lattice frequency pi k / R.
  long signedFrequencyIndex(std::size_t k) const;
  double frequency(std::size_t k) const;
  Point frequencyPoint(std::size_t flat) const;
  double nyquist() const;

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && radius_ == other.radius_ && n_ == other.n_;
  }

 private:
  int dim_;
  double radius_;
  std::size_t n_;
  double h_;
};

class GridFunction {
 public:
  explicit GridFunction(const Grid& grid);  // zero function
  GridFunction(const Grid& grid, std::vector<Complex> values);

  static GridFunction sample(const Grid& grid, const std::function<Complex(const Point&)>& fn);
  static GridFunction sampleReal(const Grid& grid, const std::function<double(const Point&)>& fn);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  GridFunction scaled(Complex factor) const;
  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator-(const GridFunction& other) const;
  GridFunction pointwiseProduct(const GridFunction& other) const;
  // |f|^t as a real function; t > 0.
  GridFunction absPower(double t) const;
  GridFunction absolute() const;
  GridFunction map(const std::function<Complex(const Point&, Complex)>& fn) const;

  double maxAbs() const;
  bool isZero() const;

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

class GridFunctionSequence {
 public:
  explicit GridFunctionSequence(const Grid& grid) : grid_(grid) {}
  GridFunctionSequence(const Grid& grid, std::vector<GridFunction> entries);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return entries_.size(); }
  const GridFunction& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<GridFunction>& entries() const { return entries_; }
  void push(GridFunction f);

  GridFunctionSequence scaled(Complex factor) const;
  GridFunctionSequence operator+(const GridFunctionSequence& other) const;
  GridFunctionSequence absPower(double t) const;
  bool isZero() const;

 private:
  Grid grid_;
  std::vector<GridFunction> entries_;
};

void requireSameGrid(const Grid& a, const Grid& b);

Complex integrate(const GridFunction& g);
double integrateAbs(const GridFunction& g);

// 1 at nodes with |x - center| < radius (no wrap), else 0.
GridFunction ballIndicator(const Grid& grid, const Point& center, double radius);
// Indicator of the half-open box [lo, hi) (coordinate-wise).
GridFunction boxIndicator(const Grid& grid, const Point& lo, const Point& hi);

// Periodic convolution scaled by h^n, via DFT.
GridFunction convolve(const GridFunction& f, const GridFunction& k);
// Inverse DFT of window(xi) * DFT(f) on the frequency lattice xi = pi k / R.
GridFunction fourierMultiplier(const GridFunction& f, const std::function<double(const Point&)>& window);
// Several windows sharing one forward transform.
std::vector<GridFunction> fourierMultipliers(const GridFunction& f,
                                             const std::vector<std::function<double(const Point&)>>& windows);
// Frequency-side energy (2R)^n / N^{2n} * sum |F_k|^2, equal to integrate(|f|^2).
double frequencyEnergy(const GridFunction& f);

void writeGridFunctionCsv(std::ostream& out, const GridFunction& f);
GridFunction readGridFunctionCsv(std::istream& in);
void writeGridFunctionCsv(const std::string& path, const GridFunction& f);
GridFunction readGridFunctionCsv(const std::string& path);

// Manifest: {"grid":{"dim":..,"R":..,"N":..},"entries":["f0.csv",...]}, paths relative to the manifest.
GridFunctionSequence readSequenceManifest(const std::string& path);
void writeSequenceManifest(const std::string& path, const GridFunctionSequence& seq);

}  // namespace vexspace
