#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace peq {

// Cell-centred scalar on an nx*ny*nz block with one ghost layer on every
// face. Index range is [-1, n] in each direction; storage is x-fastest.
class Field3D {
 public:
  Field3D() = default;
  Field3D(int nx, int ny, int nz, double value = 0.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  bool empty() const { return data_.empty(); }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i + 1) +
           sx_ * (static_cast<std::size_t>(j + 1) + sy_ * static_cast<std::size_t>(k + 1));
  }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  bool same_shape(const Field3D& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_ && nz_ == other.nz_;
  }

  void fill(double value);

  // Interior values packed x-fastest, ghosts dropped.
  std::vector<double> interior() const;
  void set_interior(std::span<const double> values);

  // this += a * other over the interior.
  void axpy(double a, const Field3D& other);

 private:
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::size_t sx_ = 0, sy_ = 0;
  std::vector<double> data_;
};

// Horizontal (x, y) companion of Field3D, used for depth averages and p_s.
class Field2D {
 public:
  Field2D() = default;
  Field2D(int nx, int ny, double value = 0.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  bool empty() const { return data_.empty(); }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i + 1) + sx_ * static_cast<std::size_t>(j + 1);
  }
  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  bool same_shape(const Field2D& other) const { return nx_ == other.nx_ && ny_ == other.ny_; }

  void fill(double value);
  std::vector<double> interior() const;
  void set_interior(std::span<const double> values);
  void axpy(double a, const Field2D& other);

 private:
  int nx_ = 0, ny_ = 0;
  std::size_t sx_ = 0;
  std::vector<double> data_;
};

}  // namespace peq
